#include <doctest.h>

#include <cmath>

#include "conclab/error.hpp"
#include "conclab/sympoly.hpp"
#include "support.hpp"

using namespace conclab;
using namespace conclab::sympoly;

TEST_CASE("sigma_k matches the subset-enumeration oracle for n <= 12") {
  testing::Gen gen(1);
  for (int n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto z = gen.disk_vector(static_cast<std::size_t>(n));
      const ComplexSequence seq(z, true);
      for (int k = 1; k <= n; ++k) {
        const auto want = testing::subset_sigma(z, k);
        CHECK(std::abs(sigma_k(seq, k) - want) <= 1e-13);
        CHECK(std::abs(sigma_k_bruteforce(seq, k) - want) <= 1e-13);
      }
    }
  }
}

TEST_CASE("sigma_k hand values") {
  const std::vector<cplx> z = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(sigma_k(z, 0), DomainError);
  CHECK(sigma_k(z, 1) == cplx(2.0));
  CHECK(std::abs(sigma_k(z, 2) - cplx(11.0 / 3.0)) <= 1e-15);
  CHECK(std::abs(sigma_k(z, 3) - cplx(6.0)) <= 1e-15);
  const std::vector<cplx> c(7, std::polar(1.0, 0.3));
  for (int k = 1; k <= 7; ++k) CHECK(std::abs(sigma_k(c, k) - std::pow(c[0], k)) <= 1e-14);
  std::vector<double> work;
  CHECK(sigma_k(std::span<const cplx>(z), 2, work) == sigma_k(z, 2));
  CHECK_THROWS_AS(sigma_k(z, 4), DomainError);
}

TEST_CASE("power of the mean") {
  const std::vector<cplx> z = {cplx(0.0, 1.0), cplx(0.0, 1.0)};
  CHECK(power_of_mean(z, 0) == cplx(1.0));
  CHECK(std::abs(power_of_mean(z, 2) - cplx(-1.0)) <= 1e-15);
  testing::Gen gen(3);
  const auto w = gen.disk_vector(10);
  cplx mean = 0.0;
  for (auto x : w) mean += x;
  mean /= 10.0;
  CHECK(std::abs(power_of_mean(w, 13) - std::pow(mean, 13)) <= 1e-14);
}

TEST_CASE("gap between sigma_k and the power of the mean stays below 6(k-1)/(n-1)") {
  testing::Gen gen(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = gen.integer(2, 120);
    const int k = gen.integer(1, n);
    std::vector<cplx> z(static_cast<std::size_t>(n));
    const int family = trial % 3;
    const double center = gen.uniform(0.0, 6.3);
    for (auto& x : z) {
      if (family == 0) x = gen.disk();
      if (family == 1) x = std::polar(1.0, gen.uniform(0.0, 6.3));
      if (family == 2) x = std::polar(1.0, center + gen.uniform(-0.2, 0.2));
    }
    const auto g = prop41_gap(ComplexSequence(z, true), k);
    CHECK(g.bound == doctest::Approx(6.0 * (k - 1) / (n - 1)));
    CHECK(g.gap <= g.bound + 1e-10);
    CHECK(g.gap <= crude_gap_bound(n, k) + 1e-12);
  }
  CHECK_THROWS_AS(prop41_gap(ComplexSequence({0.5, 0.5}), 2), PreconditionError);
  CHECK_THROWS_AS(ComplexSequence({cplx(1.5, 0.0)}, true), PreconditionError);
}

TEST_CASE("sigma_2 and leave-one-out identities") {
  testing::Gen gen(7);
  for (int n = 2; n <= 60; ++n) {
    const ComplexSequence z(gen.disk_vector(static_cast<std::size_t>(n)), true);
    CHECK(sigma2_identity_residual(z) <= 1e-13);
    for (int k = 2; k <= std::min(n, 12); ++k) CHECK(leave_one_out_residual(z, k) <= 1e-13);
  }
  const ComplexSequence z({1.0, 2.0, 3.0});
  CHECK(z.without(1).size() == 2);
  CHECK(z.without(1)[1] == cplx(3.0));
}

TEST_CASE("falling ratio hand values") {
  CHECK(falling_ratio_complement(4, 2) == doctest::Approx(0.25));
  CHECK(falling_ratio_complement(10, 1) == 0.0);
  CHECK(falling_ratio_complement(3, 3) == doctest::Approx(1.0 - 6.0 / 27.0));
  CHECK(crude_gap_bound(4, 2) == doctest::Approx(0.5));
  CHECK(falling_ratio_complement(1000000, 2) == doctest::Approx(1e-6).epsilon(1e-9));
}

TEST_CASE("brute force refuses oversized inputs") {
  const ComplexSequence z(std::vector<cplx>(40, 0.5), true);
  CHECK_THROWS_AS(sigma_k_bruteforce(z, 20), BudgetError);
}
