#include "conclab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "conclab/error.hpp"
#include "conclab/rng.hpp"
#include "conclab/slice_graph.hpp"
#include "conclab/sympoly.hpp"

namespace conclab::exp {

namespace {

using cplx = std::complex<double>;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// f(tau) = sum_{i in tau} a_i.
std::vector<double> linear_function(const slice::SliceIndex& index, std::span<const double> a) {
  std::vector<double> f(index.size());
  for (std::size_t v = 0; v < index.size(); ++v) {
    double s = 0.0;
    for (int i : index.members(v)) s += a[static_cast<std::size_t>(i - 1)];
    f[v] = s;
  }
  return f;
}

}  // namespace

ExperimentReport run_graph_check(const cfg::GraphCheckConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const slice::SliceGraph graph(c.n, c.k, c.budget, c.eigen_budget);
  graph.require_enumerable();
  const slice::SliceIndex index(graph);
  const std::size_t verts = index.size();

  ExperimentReport r;
  r.experiment = "graph-check";
  r.config = cfg::to_json(c);
  r.seed = c.seed;

  // Poincare is an equality on linear functions.
  const std::size_t linear_count = std::min<std::size_t>(c.fns, 100);
  Curve poincare{"poincare", {"fn_index[1]", "linear[bool]", "variance[1]", "slack[1]"}, {}};
  double linear_worst = 0.0;
  bool linear_ok = true;
  for (std::size_t i = 0; i < linear_count; ++i) {
    Stream rng(c.seed, "linear", i);
    std::vector<double> a(static_cast<std::size_t>(c.n));
    double scale = 0.0;
    for (double& x : a) {
      x = rng.normal();
      scale += x * x;
    }
    const auto f = linear_function(index, a);
    const double slack = slice::check_poincare(index, f);
    linear_worst = std::max(linear_worst, std::abs(slack) / scale);
    linear_ok = linear_ok && std::abs(slack) <= 1e-10 * scale;
    poincare.rows.push_back({static_cast<double>(i), 1.0, slice::mean_variance(f).variance, slack});
  }

  // Random functions: Poincare, Dirichlet consistency and mLSI.
  Curve mlsi{"mlsi", {"fn_index[1]", "left_slack[1]", "right_slack[1]"}, {}};
  bool random_ok = true;
  bool dirichlet_ok = true;
  bool mlsi_ok = true;
  double poincare_min = std::numeric_limits<double>::infinity();
  double mlsi_min = std::numeric_limits<double>::infinity();
  double dirichlet_worst = 0.0;
  std::vector<double> f(verts);
  for (std::size_t i = 0; i < c.fns; ++i) {
    Stream rng(c.seed, "fn", i);
    for (double& x : f) x = rng.normal();
    const double var = slice::mean_variance(f).variance;
    const double energy = slice::dirichlet_form(index, f, f);
    const double energy2 = slice::dirichlet_energy_by_gradients(index, f);
    const double slack = energy / (2.0 * c.n) - var;
    const double scale = std::max(var, energy / (2.0 * c.n));
    poincare_min = std::min(poincare_min, slack / scale);
    random_ok = random_ok && slack >= -1e-12 * scale;
    const double rel = std::abs(energy - energy2) / std::max(energy, 1e-300);
    dirichlet_worst = std::max(dirichlet_worst, rel);
    dirichlet_ok = dirichlet_ok && rel <= 1e-12;
    poincare.rows.push_back({static_cast<double>(linear_count + i), 0.0, var, slack});

    for (double& x : f) x = 6.0 * rng.uniform() - 3.0;
    const auto s = slice::check_mlsi(index, f);
    mlsi_min = std::min({mlsi_min, s.left, s.right});
    mlsi_ok = mlsi_ok && s.left >= -1e-10 && s.right >= -1e-10;
    mlsi.rows.push_back({static_cast<double>(i), s.left, s.right});
  }

  // Deviation inequality by exact enumeration.
  Curve deviation{"deviation", {"fn_index[1]", "h[1]", "probability[prob]", "bound[prob]"}, {}};
  bool deviation_ok = true;
  const std::size_t dev_count = std::min<std::size_t>(c.fns, 100);
  for (std::size_t i = 0; i < dev_count; ++i) {
    Stream rng(c.seed, "deviation", i);
    for (double& x : f) x = rng.uniform();
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    const double range = *hi - *lo;
    for (double q : {0.1, 0.25, 0.5}) {
      const auto d = slice::deviation_probability(index, f, q * range);
      const double bound = d.bound.value_or(0.0);
      deviation_ok = deviation_ok && (!d.bound || d.probability <= bound);
      deviation.rows.push_back({static_cast<double>(i), q * range, d.probability, bound});
    }
  }

  r.results["vertices"] = verts;
  r.results["degree"] = graph.degree();
  r.results["poincare_linear_max_rel"] = linear_worst;
  r.results["poincare_random_min_rel_slack"] = c.fns ? poincare_min : 0.0;
  r.results["mlsi_min_slack"] = c.fns ? mlsi_min : 0.0;
  r.results["dirichlet_max_rel_diff"] = dirichlet_worst;
  r.check("poincare_linear_equality", linear_ok, "max |slack|/scale " + format_real(linear_worst));
  r.check("poincare_random", random_ok);
  r.check("dirichlet_consistency", dirichlet_ok);
  r.check("mlsi", mlsi_ok, "min slack " + format_real(c.fns ? mlsi_min : 0.0));
  r.check("deviation", deviation_ok);

  if (graph.vertex_count() <= graph.eigen_budget()) {
    const double gap = slice::spectral_gap(graph);
    const double expected = 2.0 * c.n;
    r.results["spectral_gap"] = gap;
    r.check("spectral_gap", std::abs(gap - expected) <= 1e-8 * expected,
            format_real(gap) + " vs " + format_real(expected));
  } else {
    r.results["spectral_gap"] = "skipped: vertex count above eigen budget";
  }

  r.curves = {std::move(poincare), std::move(mlsi), std::move(deviation)};
  r.wall_seconds = seconds_since(start);
  return r;
}

namespace {

enum class Family { Disk, Circle, Cluster, Signs };

std::vector<cplx> draw_inputs(Stream& rng, std::size_t n, Family family) {
  std::vector<cplx> z(n);
  const double center = 2.0 * std::numbers::pi * rng.uniform();
  for (auto& x : z) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    switch (family) {
      case Family::Disk: x = std::polar(std::sqrt(rng.uniform()), theta); break;
      case Family::Circle: x = std::polar(1.0, theta); break;
      case Family::Cluster: x = std::polar(1.0, center + 0.3 * (rng.uniform() - 0.5)); break;
      case Family::Signs: x = rng.sign(); break;
    }
  }
  return z;
}

// Mean absolute product over k-subsets: the natural scale for sigma_k(z).
double abs_scale(std::span<const cplx> z, int k) {
  std::vector<cplx> a(z.size());
  std::transform(z.begin(), z.end(), a.begin(), [](cplx x) { return cplx(std::abs(x)); });
  return std::max(std::abs(sympoly::sigma_k(a, k)), std::numeric_limits<double>::min());
}

}  // namespace

ExperimentReport run_sympoly_check(const cfg::SympolyCheckConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.experiment = "sympoly-check";
  r.config = cfg::to_json(c);
  r.seed = c.seed;

  // Dynamic program against the literal subset sum.
  const int oracle_n = std::min(12, c.n_max);
  double oracle_worst = 0.0;
  Curve oracle{"oracle", {"n[1]", "k[1]", "rel_error[1]"}, {}};
  for (int n = 1; n <= oracle_n; ++n) {
    Stream rng(c.seed, "oracle", static_cast<std::uint64_t>(n));
    const sympoly::ComplexSequence z(draw_inputs(rng, static_cast<std::size_t>(n), Family::Disk), true);
    for (int k = 1; k <= n; ++k) {
      const cplx dp = sympoly::sigma_k(z, k);
      const cplx bf = sympoly::sigma_k_bruteforce(z, k);
      const double rel = std::abs(dp - bf) / abs_scale(z.entries(), k);
      oracle_worst = std::max(oracle_worst, rel);
      oracle.rows.push_back({static_cast<double>(n), static_cast<double>(k), rel});
    }
  }

  // The 6(k-1)/(n-1) sweep. Trials cycle through input families and draw n
  // and k at random.
  constexpr Family kFamilies[] = {Family::Disk, Family::Circle, Family::Cluster, Family::Signs};
  double ratio_max = 0.0;
  double excess_max = -std::numeric_limits<double>::infinity();
  bool crude_ok = true;
  Curve sweep{"sweep", {"trial[1]", "n[1]", "k[1]", "gap[1]", "bound[1]"}, {}};
  std::vector<double> work;
  const int n_hi = std::max(2, c.n_max);
  for (std::size_t t = 0; t < c.trials; ++t) {
    Stream rng(c.seed, "sweep", t);
    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_hi - 1)));
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const sympoly::ComplexSequence z(draw_inputs(rng, static_cast<std::size_t>(n), kFamilies[t % 4]), true);
    const auto gap = sympoly::prop41_gap(z, k);
    excess_max = std::max(excess_max, gap.gap - gap.bound);
    if (gap.bound > 0.0) ratio_max = std::max(ratio_max, gap.gap / gap.bound);
    crude_ok = crude_ok && gap.gap <= sympoly::crude_gap_bound(n, k) + 1e-12;
    sweep.rows.push_back({static_cast<double>(t), static_cast<double>(n), static_cast<double>(k), gap.gap,
                          gap.bound});
  }

  // Identities.
  double sigma2_worst = 0.0;
  double loo_worst = 0.0;
  const int id_hi = std::min(100, std::max(2, c.n_max));
  for (int n = 2; n <= id_hi; ++n) {
    Stream rng(c.seed, "identity", static_cast<std::uint64_t>(n));
    const sympoly::ComplexSequence z(draw_inputs(rng, static_cast<std::size_t>(n), Family::Disk), true);
    sigma2_worst = std::max(sigma2_worst, sympoly::sigma2_identity_residual(z));
    const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    loo_worst = std::max(loo_worst, sympoly::leave_one_out_residual(z, k));
  }

  r.results["oracle_max_rel_error"] = oracle_worst;
  r.results["oracle_max_n"] = oracle_n;
  r.results["sweep_max_ratio"] = ratio_max;
  r.results["sweep_max_excess"] = c.trials ? excess_max : 0.0;
  r.results["sigma2_identity_max_residual"] = sigma2_worst;
  r.results["leave_one_out_max_residual"] = loo_worst;
  r.check("oracle", oracle_worst <= 1e-12, "max rel error " + format_real(oracle_worst));
  r.check("prop41_sweep", !(excess_max > 1e-10), "max gap/bound " + format_real(ratio_max));
  r.check("crude_bound", crude_ok);
  r.check("sigma2_identity", sigma2_worst <= 1e-11);
  r.check("leave_one_out", loo_worst <= 1e-11);
  r.curves = {std::move(oracle), std::move(sweep)};
  r.wall_seconds = seconds_since(start);
  return r;
}

}  // namespace conclab::exp
