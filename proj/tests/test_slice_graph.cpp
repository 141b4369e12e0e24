#include <doctest.h>

#include <cmath>
#include <numeric>

#include "conclab/error.hpp"
#include "conclab/slice_graph.hpp"
#include "support.hpp"

using namespace conclab;
using namespace conclab::slice;

namespace {

std::vector<double> random_values(testing::Gen& gen, std::size_t size) {
  std::vector<double> f(size);
  for (double& x : f) x = gen.normal();
  return f;
}

std::vector<double> linear(const SliceIndex& index, const std::vector<double>& a) {
  std::vector<double> f(index.size());
  for (std::size_t v = 0; v < index.size(); ++v) {
    for (int i : index.members(v)) f[v] += a[static_cast<std::size_t>(i - 1)];
  }
  return f;
}

double oracle_energy(int n, int k, const std::vector<double>& f) {
  const auto l = testing::slice_laplacian(n, k);
  const Eigen::Map<const Eigen::VectorXd> v(f.data(), static_cast<Eigen::Index>(f.size()));
  return 2.0 * v.dot(l * v) / static_cast<double>(f.size());
}

}  // namespace

TEST_CASE("binomial matches Pascal's triangle and saturates") {
  std::vector<std::vector<std::uint64_t>> pascal(61, std::vector<std::uint64_t>(61, 0));
  for (int n = 0; n <= 60; ++n) {
    pascal[n][0] = 1;
    for (int k = 1; k <= n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + (k <= n - 1 ? pascal[n - 1][k] : 0);
  }
  for (int n = 0; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == pascal[n][k]);
  }
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("slice construction rejects degenerate parameters and enforces the budget") {
  CHECK_THROWS_AS(SliceGraph(5, 0), DomainError);
  CHECK_THROWS_AS(SliceGraph(5, 5), DomainError);
  CHECK_NOTHROW(SliceGraph(64, 32));
  CHECK_THROWS_AS(SliceGraph(64, 32).require_enumerable(), BudgetError);
  CHECK_THROWS_AS(SliceIndex(SliceGraph(30, 15)), BudgetError);
  CHECK_THROWS_AS(SubsetVertex(5, {3, 2}), DomainError);
  CHECK_THROWS_AS(SubsetVertex(5, {0, 2}), DomainError);
}

TEST_CASE("lexicographic enumeration and ranking agree with a bit-mask oracle") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k < n; ++k) {
      const SliceGraph g(n, k);
      const SliceIndex index(g);
      const auto masks = testing::slice_masks(n, k);
      REQUIRE(index.size() == masks.size());
      REQUIRE(index.size() == binomial(n, k));
      for (std::size_t v = 0; v < index.size(); ++v) {
        std::uint32_t m = 0;
        for (int i : index.members(v)) m |= 1U << (i - 1);
        CHECK(m == masks[v]);
        CHECK(index.rank(index.members(v)) == v);
      }
    }
  }
}

TEST_CASE("neighbors are the swaps, sorted, at distance one") {
  for (int n = 2; n <= 9; ++n) {
    for (int k = 1; k < n; ++k) {
      const SliceGraph g(n, k);
      const SliceIndex index(g);
      const auto masks = testing::slice_masks(n, k);
      std::vector<std::uint32_t> scratch;
      for (std::size_t v = 0; v < index.size(); ++v) {
        auto nb = index.neighbors(v, scratch);
        std::vector<std::uint32_t> got(nb.begin(), nb.end());
        std::sort(got.begin(), got.end());
        std::vector<std::uint32_t> want;
        for (std::size_t u = 0; u < masks.size(); ++u) {
          if (std::popcount(masks[u] ^ masks[v]) == 2) want.push_back(static_cast<std::uint32_t>(u));
        }
        CHECK(got == want);
      }
      const auto x = index.vertex(0);
      const auto list = neighbors(g, x);
      CHECK(static_cast<int>(list.size()) == g.degree());
      CHECK(std::is_sorted(list.begin(), list.end()));
      for (const auto& y : list) CHECK(slice_distance(x, y) == 1);
    }
  }
}

TEST_CASE("slice distance is a metric") {
  testing::Gen gen(3);
  const SliceGraph g(9, 4);
  const SliceIndex index(g);
  for (int t = 0; t < 300; ++t) {
    const auto a = index.vertex(static_cast<std::size_t>(gen.integer(0, 125)));
    const auto b = index.vertex(static_cast<std::size_t>(gen.integer(0, 125)));
    const auto c = index.vertex(static_cast<std::size_t>(gen.integer(0, 125)));
    CHECK(slice_distance(a, b) == slice_distance(b, a));
    CHECK((slice_distance(a, b) == 0) == (a == b));
    CHECK(slice_distance(a, c) <= slice_distance(a, b) + slice_distance(b, c));
  }
  // Above 64 coordinates the mask is absent and the set path is used.
  const SubsetVertex x(70, {1, 2, 69});
  const SubsetVertex y(70, {2, 3, 70});
  CHECK(!x.mask());
  CHECK(slice_distance(x, y) == 2);
}

TEST_CASE("Dirichlet form agrees with the Laplacian oracle and with the gradient form") {
  testing::Gen gen(5);
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      const SliceGraph g(n, k);
      const SliceIndex index(g);
      const auto f = random_values(gen, index.size());
      const double e = dirichlet_form(index, f, f);
      CHECK(e == doctest::Approx(oracle_energy(n, k, f)).epsilon(1e-12));
      CHECK(e == doctest::Approx(dirichlet_energy_by_gradients(index, f)).epsilon(1e-12));
      const GraphFunction gf(g, f);
      CHECK(dirichlet_form(g, gf, gf) == doctest::Approx(e).epsilon(1e-14));
      const auto x = index.vertex(0);
      CHECK(gradient_sq_norm(g, gf, x) == doctest::Approx(gradient_sq_norm(index, f, 0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("two-vertex slice: Poincare holds with equality") {
  const SliceGraph g(2, 1);
  const GraphFunction f(g, {1.5, -0.5});
  const auto mv = mean_variance(g, f);
  CHECK(mv.mean == doctest::Approx(0.5));
  CHECK(mv.variance == doctest::Approx(1.0));
  CHECK(dirichlet_form(g, f, f) == doctest::Approx(4.0));
  CHECK(check_poincare(g, f) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("Poincare: equality for linear functions, nonnegative slack otherwise") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(2, 9);
    const int k = gen.integer(1, n - 1);
    const SliceIndex index{SliceGraph(n, k)};
    std::vector<double> a(static_cast<std::size_t>(n));
    double scale = 0.0;
    for (double& x : a) {
      x = gen.normal();
      scale += x * x;
    }
    CHECK(std::abs(check_poincare(index, linear(index, a))) <= 1e-10 * scale);
    const auto f = random_values(gen, index.size());
    CHECK(check_poincare(index, f) >= -1e-12 * mean_variance(f).variance);
  }
}

TEST_CASE("spectral gap is 2n by every route") {
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k < n; ++k) {
      const SliceGraph g(n, k);
      CHECK(spectral_gap(g) == doctest::Approx(2.0 * n).epsilon(1e-10));
      CHECK(spectral_gap_quotient(g) == doctest::Approx(2.0 * n).epsilon(1e-10));
    }
  }
  // Independent dense oracle on a slice routed through the quotient.
  const SliceGraph big(11, 5);
  REQUIRE(big.vertex_count() > kDenseLimit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(testing::slice_laplacian(11, 5));
  CHECK(spectral_gap(big) == doctest::Approx(2.0 * solver.eigenvalues()[1]).epsilon(1e-10));
  CHECK(spectral_gap(SliceGraph(60, 3, 2'000'000, 100'000)) == doctest::Approx(120.0).epsilon(1e-10));
  CHECK_THROWS_AS(spectral_gap(SliceGraph(16, 8, 2'000'000, 4096)), BudgetError);
}

TEST_CASE("entropy hand values") {
  const double h[] = {1.0, 3.0};
  CHECK(entropy(h) == doctest::Approx((std::log(0.5) + 3.0 * std::log(1.5)) / 2.0));
  const double c[] = {2.0, 2.0, 2.0};
  CHECK(entropy(c) == 0.0);
  const double z[] = {0.0, 1.0};
  CHECK(entropy(z) == doctest::Approx(0.5 * std::log(2.0)));
  const double bad[] = {1.0, -1.0};
  CHECK_THROWS_AS(entropy(bad), DomainError);
}

TEST_CASE("modified log-Sobolev slacks are nonnegative") {
  testing::Gen gen(17);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen.integer(2, 8);
    const int k = gen.integer(1, n - 1);
    const SliceIndex index{SliceGraph(n, k)};
    std::vector<double> f(index.size());
    const double spread = gen.uniform(0.1, 8.0);
    for (double& x : f) x = gen.uniform(-spread, spread);
    const auto s = check_mlsi(index, f);
    CHECK(s.left >= -1e-10);
    CHECK(s.right >= -1e-10);
  }
  const SliceIndex index{SliceGraph(4, 2)};
  std::vector<double> wide(index.size(), 0.0);
  wide[0] = 600.0;
  CHECK_THROWS_AS(check_mlsi(index, wide), RangeError);
  // A shift does not change the verdict, only the scale.
  std::vector<double> f = {0.1, -0.3, 0.7, 0.2, -0.9, 0.4};
  std::vector<double> g = f;
  for (double& x : g) x += 5.0;
  const auto a = check_mlsi(index, f);
  const auto b = check_mlsi(index, g);
  CHECK(b.left == doctest::Approx(a.left * std::exp(5.0)).epsilon(1e-10));
  CHECK(b.right == doctest::Approx(a.right * std::exp(5.0)).epsilon(1e-10));
}

TEST_CASE("deviation inequality by enumeration") {
  testing::Gen gen(23);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen.integer(2, 8);
    const int k = gen.integer(1, n - 1);
    const SliceIndex index{SliceGraph(n, k)};
    const auto f = random_values(gen, index.size());
    const double h = gen.uniform(0.01, 3.0);
    const auto d = deviation_probability(index, f, h);
    REQUIRE(d.bound);
    CHECK(d.probability <= *d.bound);
  }
  const SliceIndex index{SliceGraph(5, 2)};
  const std::vector<double> flat(index.size(), 1.0);
  const auto d = deviation_probability(index, flat, 0.5);
  CHECK(d.probability == 0.0);
  CHECK(!d.bound);
  CHECK_THROWS_AS(deviation_probability(index, flat, 0.0), DomainError);
}

TEST_CASE("sample_vertex is uniform") {
  const SliceGraph g(5, 2);
  const SliceIndex index(g);
  Stream rng(1, "test", 0);
  std::vector<int> counts(index.size(), 0);
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) {
    const auto v = sample_vertex(g, rng);
    ++counts[index.rank(v.indices())];
  }
  const double expect = static_cast<double>(draws) / static_cast<double>(index.size());
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 27.9);  // 0.999 quantile, 9 degrees of freedom
}
