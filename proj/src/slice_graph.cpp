#include "conclab/slice_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "conclab/error.hpp"

namespace conclab::slice {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

void require_same_graph(const SliceGraph& g, const GraphFunction& f) {
  if (f.n() != g.n() || f.k() != g.k()) {
    throw DomainError("graph function belongs to a different slice");
  }
}

void require_vertex_of(const SliceGraph& g, const SubsetVertex& x) {
  if (x.n() != g.n() || x.k() != g.k()) {
    throw DomainError("vertex is not in G(" + std::to_string(g.n()) + "," +
                      std::to_string(g.k()) + ")");
  }
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i + 1) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::size_t lex_rank(int n, int k, std::span<const int> c) {
  std::uint64_t sum = 0;
  for (int i = 0; i < k; ++i) sum += binomial(n - c[i], k - i);
  return static_cast<std::size_t>(binomial(n, k) - 1 - sum);
}

// Replace members[pos] by j and keep the set sorted.
void swap_member(std::span<const int> members, int pos, int j, int* out) {
  const int k = static_cast<int>(members.size());
  int w = 0;
  bool placed = false;
  for (int r = 0; r < k; ++r) {
    if (r == pos) continue;
    if (!placed && j < members[r]) {
      out[w++] = j;
      placed = true;
    }
    out[w++] = members[r];
  }
  if (!placed) out[w++] = j;
}

double max_value(std::span<const double> f) { return *std::max_element(f.begin(), f.end()); }
double min_value(std::span<const double> f) { return *std::min_element(f.begin(), f.end()); }

}  // namespace

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) / i is an integer; cancel gcd(r, i) first so the division
    // is exact without forming the full product.
    const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    const std::uint64_t t = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
    r /= g;
    if (r > kSaturated / t) return kSaturated;
    r *= t;
  }
  return r;
}

SliceGraph::SliceGraph(int n, int k, std::uint64_t budget, std::uint64_t eigen_budget)
    : n_(n), k_(k), vertex_count_(binomial(n, k)), budget_(budget), eigen_budget_(eigen_budget) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw DomainError("slice G(" + std::to_string(n) + "," + std::to_string(k) +
                      ") requires 1 <= k <= n-1");
  }
}

void SliceGraph::require_enumerable() const {
  if (vertex_count_ > budget_ || vertex_count_ > std::numeric_limits<std::uint32_t>::max()) {
    throw BudgetError("enumerating G(" + std::to_string(n_) + "," + std::to_string(k_) +
                          ") needs a budget of " + std::to_string(vertex_count_) +
                          " vertices (current budget " + std::to_string(budget_) + ")",
                      vertex_count_, budget_);
  }
}

SubsetVertex::SubsetVertex(int n, std::vector<int> indices) : n_(n), indices_(std::move(indices)) {
  if (n < 1) throw DomainError("vertex ambient dimension must be positive");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1 || indices_[i] > n) {
      throw DomainError("vertex index " + std::to_string(indices_[i]) + " outside [1, " +
                        std::to_string(n) + "]");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw DomainError("vertex indices must be strictly increasing");
    }
  }
  if (n <= 64) {
    std::uint64_t m = 0;
    for (int i : indices_) m |= std::uint64_t{1} << (i - 1);
    mask_ = m;
  }
}

bool SubsetVertex::contains(int i) const noexcept {
  if (mask_) return i >= 1 && i <= n_ && ((*mask_ >> (i - 1)) & 1U);
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

GraphFunction::GraphFunction(const SliceGraph& g, std::vector<double> values)
    : n_(g.n()), k_(g.k()), values_(std::move(values)) {
  if (values_.size() != g.vertex_count()) {
    throw DomainError("graph function has " + std::to_string(values_.size()) +
                      " values; the slice has " + std::to_string(g.vertex_count()) + " vertices");
  }
}

SliceIndex::SliceIndex(const SliceGraph& g) : graph_(g) {
  g.require_enumerable();
  const int n = g.n();
  const int k = g.k();
  count_ = static_cast<std::size_t>(g.vertex_count());

  binom_.resize(static_cast<std::size_t>(n + 1) * (k + 2));
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= k + 1; ++b) binom_[a * (k + 2) + b] = binomial(a, b);
  }

  members_.resize(count_ * k);
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 1);
  std::size_t v = 0;
  do {
    std::copy(c.begin(), c.end(), members_.begin() + v * k);
    ++v;
  } while (next_combination(c, n));

  const auto d = static_cast<std::size_t>(g.degree());
  if (count_ * d <= kTableLimit) {
    adjacency_.resize(count_ * d);
    for (std::size_t u = 0; u < count_; ++u) compute_neighbors(u, adjacency_.data() + u * d);
  }
}

SubsetVertex SliceIndex::vertex(std::size_t v) const {
  auto m = members(v);
  return SubsetVertex(graph_.n(), std::vector<int>(m.begin(), m.end()));
}

std::size_t SliceIndex::rank(std::span<const int> c) const noexcept {
  const int n = graph_.n();
  const int k = graph_.k();
  std::uint64_t sum = 0;
  for (int i = 0; i < k; ++i) sum += binom_[(n - c[i]) * (k + 2) + (k - i)];
  return static_cast<std::size_t>(graph_.vertex_count() - 1 - sum);
}

void SliceIndex::compute_neighbors(std::size_t v, std::uint32_t* out) const {
  const int n = graph_.n();
  const int k = graph_.k();
  auto m = members(v);
  std::vector<char> in(n + 1, 0);
  for (int i : m) in[i] = 1;
  std::vector<int> buf(k);
  std::size_t w = 0;
  for (int p = 0; p < k; ++p) {
    for (int j = 1; j <= n; ++j) {
      if (in[j]) continue;
      swap_member(m, p, j, buf.data());
      out[w++] = static_cast<std::uint32_t>(rank(buf));
    }
  }
}

std::span<const std::uint32_t> SliceIndex::neighbors(std::size_t v,
                                                     std::vector<std::uint32_t>& scratch) const {
  const auto d = static_cast<std::size_t>(graph_.degree());
  if (!adjacency_.empty()) return {adjacency_.data() + v * d, d};
  scratch.resize(d);
  compute_neighbors(v, scratch.data());
  return scratch;
}

std::vector<SubsetVertex> enumerate_vertices(const SliceGraph& g) {
  g.require_enumerable();
  std::vector<SubsetVertex> out;
  out.reserve(static_cast<std::size_t>(g.vertex_count()));
  std::vector<int> c(g.k());
  std::iota(c.begin(), c.end(), 1);
  do {
    out.emplace_back(g.n(), c);
  } while (next_combination(c, g.n()));
  return out;
}

std::vector<SubsetVertex> neighbors(const SliceGraph& g, const SubsetVertex& x) {
  require_vertex_of(g, x);
  std::vector<SubsetVertex> out;
  out.reserve(static_cast<std::size_t>(g.degree()));
  std::vector<int> buf(g.k());
  for (int p = 0; p < g.k(); ++p) {
    for (int j = 1; j <= g.n(); ++j) {
      if (x.contains(j)) continue;
      swap_member(x.indices(), p, j, buf.data());
      out.emplace_back(g.n(), buf);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int slice_distance(const SubsetVertex& x, const SubsetVertex& y) {
  if (x.n() != y.n() || x.k() != y.k()) {
    throw DomainError("slice_distance between vertices of different slices");
  }
  if (x.mask() && y.mask()) {
    return std::popcount(*x.mask() ^ *y.mask()) / 2;
  }
  std::vector<int> diff;
  std::set_symmetric_difference(x.indices().begin(), x.indices().end(), y.indices().begin(),
                                y.indices().end(), std::back_inserter(diff));
  return static_cast<int>(diff.size()) / 2;
}

double gradient_sq_norm(const SliceGraph& g, const GraphFunction& f, const SubsetVertex& x) {
  require_same_graph(g, f);
  require_vertex_of(g, x);
  const double fx = f[lex_rank(g.n(), g.k(), x.indices())];
  double s = 0.0;
  std::vector<int> buf(g.k());
  for (int p = 0; p < g.k(); ++p) {
    for (int j = 1; j <= g.n(); ++j) {
      if (x.contains(j)) continue;
      swap_member(x.indices(), p, j, buf.data());
      const double d = fx - f[lex_rank(g.n(), g.k(), buf)];
      s += d * d;
    }
  }
  return s;
}

double gradient_sq_norm(const SliceIndex& index, std::span<const double> f, std::size_t v) {
  std::vector<std::uint32_t> scratch;
  double s = 0.0;
  for (auto u : index.neighbors(v, scratch)) {
    const double d = f[v] - f[u];
    s += d * d;
  }
  return s;
}

MeanVariance mean_variance(std::span<const double> f) {
  const double size = static_cast<double>(f.size());
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / size;
  double ss = 0.0;
  for (double v : f) ss += (v - mean) * (v - mean);
  return {mean, ss / size};
}

MeanVariance mean_variance(const SliceGraph& g, const GraphFunction& f) {
  require_same_graph(g, f);
  return mean_variance(f.values());
}

double dirichlet_form(const SliceIndex& index, std::span<const double> f,
                      std::span<const double> h) {
  std::vector<std::uint32_t> scratch;
  double total = 0.0;
  for (std::size_t v = 0; v < index.size(); ++v) {
    double s = 0.0;
    for (auto u : index.neighbors(v, scratch)) s += (f[v] - f[u]) * (h[v] - h[u]);
    total += s;
  }
  return total / static_cast<double>(index.size());
}

double dirichlet_form(const SliceGraph& g, const GraphFunction& f, const GraphFunction& h) {
  require_same_graph(g, f);
  require_same_graph(g, h);
  return dirichlet_form(SliceIndex(g), f.values(), h.values());
}

double dirichlet_energy_by_gradients(const SliceIndex& index, std::span<const double> f) {
  std::vector<double> grad(index.size());
  for (std::size_t v = 0; v < index.size(); ++v) grad[v] = gradient_sq_norm(index, f, v);
  return mean_variance(grad).mean;
}

double entropy(std::span<const double> h) {
  for (double v : h) {
    if (!(v >= 0.0)) throw DomainError("entropy requires a nonnegative function");
  }
  const double mean = std::accumulate(h.begin(), h.end(), 0.0) / static_cast<double>(h.size());
  if (mean == 0.0) return 0.0;
  double s = 0.0;
  for (double v : h) {
    if (v > 0.0) s += v * std::log(v / mean);
  }
  return std::max(0.0, s / static_cast<double>(h.size()));
}

double entropy(const SliceGraph& g, const GraphFunction& h) {
  require_same_graph(g, h);
  return entropy(h.values());
}

double check_poincare(const SliceIndex& index, std::span<const double> f) {
  const double energy = dirichlet_form(index, f, f);
  return energy / (2.0 * index.graph().n()) - mean_variance(f).variance;
}

double check_poincare(const SliceGraph& g, const GraphFunction& f) {
  require_same_graph(g, f);
  return check_poincare(SliceIndex(g), f.values());
}

MlsiSlack check_mlsi(const SliceIndex& index, std::span<const double> f) {
  const double hi = max_value(f);
  const double lo = min_value(f);
  if (hi - lo > 500.0) {
    throw RangeError("range of f is " + std::to_string(hi - lo) + "; e^f would overflow (limit 500)");
  }
  if (hi > 700.0) throw RangeError("max f exceeds 700; e^f overflows");

  // Work with e^{f - max f}; every term is homogeneous of degree one in e^f.
  std::vector<double> ef(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) ef[v] = std::exp(f[v] - hi);

  std::vector<std::uint32_t> scratch;
  double form = 0.0;
  double weighted = 0.0;
  for (std::size_t v = 0; v < index.size(); ++v) {
    double a = 0.0;
    double b = 0.0;
    for (auto u : index.neighbors(v, scratch)) {
      const double df = f[v] - f[u];
      a += (ef[v] - ef[u]) * df;
      b += df * df;
    }
    form += a;
    weighted += b * ef[v];
  }
  const double size = static_cast<double>(index.size());
  form /= size;
  weighted /= size;
  const double ent = entropy(ef);
  const double scale = std::exp(hi);
  const int n = index.graph().n();
  return {(form - (n + 2) * ent) * scale, (weighted - form) * scale};
}

MlsiSlack check_mlsi(const SliceGraph& g, const GraphFunction& f) {
  require_same_graph(g, f);
  return check_mlsi(SliceIndex(g), f.values());
}

namespace {

void require_eigen_budget(const SliceGraph& g) {
  if (g.vertex_count() > g.eigen_budget()) {
    throw BudgetError("spectral gap of G(" + std::to_string(g.n()) + "," + std::to_string(g.k()) +
                          ") needs an eigen budget of " + std::to_string(g.vertex_count()) +
                          " (current " + std::to_string(g.eigen_budget()) + ")",
                      g.vertex_count(), g.eigen_budget());
  }
}

double smallest_nonzero(const Eigen::VectorXd& ascending, double scale) {
  for (Eigen::Index i = 0; i < ascending.size(); ++i) {
    if (ascending[i] > 1e-9 * scale) return ascending[i];
  }
  return 0.0;
}

}  // namespace

double spectral_gap_dense(const SliceGraph& g) {
  require_eigen_budget(g);
  const SliceIndex index(g);
  const auto size = static_cast<Eigen::Index>(index.size());
  Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(size, size);
  std::vector<std::uint32_t> scratch;
  for (Eigen::Index v = 0; v < size; ++v) {
    for (auto u : index.neighbors(static_cast<std::size_t>(v), scratch)) {
      generator(v, v) += 1.0;
      generator(v, static_cast<Eigen::Index>(u)) -= 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(generator, Eigen::EigenvaluesOnly);
  // E(f,f) = (2/V) f'Lf and Var(f) = |f - mean|^2 / V.
  return 2.0 * smallest_nonzero(solver.eigenvalues(), g.degree());
}

double spectral_gap_quotient(const SliceGraph& g) {
  require_eigen_budget(g);
  const int n = g.n();
  const int k = g.k();
  const int cells = std::min(k, n - k) + 1;

  // Distance from the base vertex {1..k} is the number of members above k.
  auto distance = [k](std::span<const int> c) {
    return static_cast<int>(c.end() - std::upper_bound(c.begin(), c.end(), k));
  };

  std::vector<double> cell_size(cells, 0.0);
  std::vector<std::vector<int>> representative(cells);
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 1);
  do {
    const int d = distance(c);
    if (cell_size[d] == 0.0) representative[d] = c;
    cell_size[d] += 1.0;
  } while (next_combination(c, n));

  Eigen::MatrixXd quotient = Eigen::MatrixXd::Zero(cells, cells);
  std::vector<int> buf(k);
  std::vector<char> in(n + 1);
  for (int d = 0; d < cells; ++d) {
    const auto& r = representative[d];
    std::fill(in.begin(), in.end(), 0);
    for (int i : r) in[i] = 1;
    for (int p = 0; p < k; ++p) {
      for (int j = 1; j <= n; ++j) {
        if (in[j]) continue;
        swap_member(r, p, j, buf.data());
        const int e = distance(buf);
        quotient(d, d) += 1.0;
        quotient(d, e) -= 1.0;
      }
    }
  }
  Eigen::MatrixXd symmetric(cells, cells);
  for (int a = 0; a < cells; ++a) {
    for (int b = 0; b < cells; ++b) {
      symmetric(a, b) = quotient(a, b) * std::sqrt(cell_size[a] / cell_size[b]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return 2.0 * smallest_nonzero(solver.eigenvalues(), g.degree());
}

double spectral_gap(const SliceGraph& g) {
  require_eigen_budget(g);
  return g.vertex_count() <= kDenseLimit ? spectral_gap_dense(g) : spectral_gap_quotient(g);
}

DeviationResult deviation_probability(const SliceIndex& index, std::span<const double> f,
                                      double h) {
  if (!(h > 0.0)) throw DomainError("deviation level h must be positive");
  const double mean = mean_variance(f).mean;
  double max_grad = 0.0;
  std::size_t hits = 0;
  for (std::size_t v = 0; v < index.size(); ++v) {
    max_grad = std::max(max_grad, gradient_sq_norm(index, f, v));
    if (std::abs(f[v] - mean) >= h) ++hits;
  }
  DeviationResult r{};
  r.sigma = std::sqrt(max_grad);
  if (r.sigma == 0.0) {
    r.probability = 0.0;
    return r;
  }
  r.probability = static_cast<double>(hits) / static_cast<double>(index.size());
  const int n = index.graph().n();
  r.bound = 2.0 * std::exp(-(n + 2) * h * h / (4.0 * r.sigma * r.sigma));
  return r;
}

DeviationResult deviation_probability(const SliceGraph& g, const GraphFunction& f, double h) {
  require_same_graph(g, f);
  return deviation_probability(SliceIndex(g), f.values(), h);
}

SubsetVertex sample_vertex(const SliceGraph& g, Stream& rng) {
  std::vector<int> pool(g.n());
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < g.k(); ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n() - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(g.k());
  std::sort(pool.begin(), pool.end());
  return SubsetVertex(g.n(), std::move(pool));
}

}  // namespace conclab::slice
