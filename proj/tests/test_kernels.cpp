#include <doctest.h>

#include <cmath>
#include <cstring>

#include "conclab/dist_metrics.hpp"
#include "conclab/error.hpp"
#include "conclab/kernels.hpp"
#include "support.hpp"

using namespace conclab;
using namespace conclab::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(a[0])) == 0;
}

const proc::SequenceModel kScaled =
    proc::ScaledRademacher{proc::DiscreteDist::make({0.5, std::sqrt(1.75)}, {0.5, 0.5})};

}  // namespace

TEST_CASE("index sets are sorted, distinct and reproducible") {
  const auto taus = draw_taus(30, 7, 50, 4);
  for (std::size_t j = 0; j < taus.count; ++j) {
    const auto t = taus.tau(j);
    CHECK(std::adjacent_find(t.begin(), t.end(), std::greater_equal<>()) == t.end());
    CHECK(t.front() >= 1);
    CHECK(t.back() <= 30);
  }
  CHECK(draw_taus(30, 7, 50, 4).indices == taus.indices);
  CHECK(draw_taus(30, 7, 50, 5).indices != taus.indices);
  const auto full = draw_taus(5, 5, 3, 1);
  for (std::size_t j = 0; j < 3; ++j) CHECK(std::vector<int>(full.tau(j).begin(), full.tau(j).end()) ==
                                            std::vector<int>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(draw_taus(5, 6, 1, 1), DomainError);
}

TEST_CASE("concentration sums equal direct sums over independently sampled paths") {
  const auto taus = draw_taus(40, 6, 9, 2);
  std::vector<double> out;
  serial::concentration_sums(proc::IidGaussian{}, 40, taus, 25, 8, out);
  for (std::size_t i = 0; i < 25; ++i) {
    Stream rng(8, "path", i);
    const auto path = proc::sample_path(proc::IidGaussian{}, 40, rng);
    for (std::size_t j = 0; j < taus.count; ++j) {
      double s = 0.0;
      for (int idx : taus.tau(j)) s += path.values[static_cast<std::size_t>(idx - 1)];
      CHECK(out[j * 25 + i] == doctest::Approx(s / std::sqrt(6.0)).epsilon(1e-15));
    }
  }
}

TEST_CASE("CLT outputs agree with the subset oracle on short paths") {
  const double ts[] = {0.3, 1.0, 2.5};
  const auto taus = draw_taus(10, 4, 2, 3);
  CltOutputs out;
  serial::clt_paths(proc::IidRademacher{}, 10, 4, ts, taus, 5, 6, out);
  for (std::size_t i = 0; i < 5; ++i) {
    Stream rng(6, "path", i);
    const auto path = proc::sample_path(proc::IidRademacher{}, 10, rng).values;
    const auto st = proc::sample_stats(path);
    for (std::size_t p = 0; p < 3; ++p) {
      std::vector<testing::cplx> w(10);
      testing::cplx mean = 0.0;
      for (std::size_t j = 0; j < 10; ++j) {
        w[j] = std::polar(1.0, ts[p] * path[j] / 2.0);
        mean += w[j] / 10.0;
      }
      CHECK(std::abs(out.f[i * 3 + p] - testing::subset_sigma(w, 4)) <= 1e-14);
      CHECK(std::abs(out.g[i * 3 + p] - std::pow(mean, 4)) <= 1e-14);
      const auto h = std::exp(testing::cplx(-st.variance * ts[p] * ts[p] / 2.0, 2.0 * st.mean * ts[p]));
      CHECK(std::abs(out.h[i * 3 + p] - h) <= 1e-14);
    }
  }
}

TEST_CASE("exchangeable draws") {
  const auto pop = proc::urn_population("gaussian", 300, 2);
  ExchangeDraws urn;
  serial::exchangeable_draws(proc::ExchangeableUrn{pop}, 20, 0, 500, 3, urn);
  for (double e : urn.eta) CHECK(std::abs(e) <= 1e-12);

  const proc::SequenceModel gauss =
      proc::DeFinettiMixture{{{proc::MixtureComponent::Kind::Gaussian, {}}}, {1.0}};
  ExchangeDraws mix;
  serial::exchangeable_draws(gauss, 10, 50, 400, 3, mix);
  for (std::size_t i = 0; i < 400; ++i) {
    Stream rng(3, "sample", i);
    const auto path = proc::sample_path(gauss, 50, rng).values;
    const auto st = proc::sample_stats(path);
    const double zeta = rng.normal();
    double s = 0.0;
    for (int j = 0; j < 10; ++j) s += path[static_cast<std::size_t>(j)];
    CHECK(mix.s[i] == doctest::Approx(s / std::sqrt(10.0)).epsilon(1e-15));
    CHECK(mix.zeta[i] == zeta);
    CHECK(mix.eta[i] == doctest::Approx(std::sqrt(10.0) * st.mean + (std::sqrt(st.variance) - 1.0) * zeta)
                            .epsilon(1e-13));
  }
  CHECK_THROWS_AS(serial::exchangeable_draws(proc::ExchangeableUrn{pop}, 301, 0, 5, 1, urn), DomainError);
  CHECK_THROWS_AS(serial::exchangeable_draws(gauss, 10, 5, 5, 1, mix), DomainError);
}

TEST_CASE("OpenMP kernels are bitwise equal to the serial reference") {
  const auto pop = proc::urn_population("exponential", 400, 1);
  const std::vector<proc::SequenceModel> models = {proc::IidRademacher{}, proc::Trigonometric{}, kScaled,
                                                   proc::ExchangeableUrn{pop}};
  const auto ts = dist::proof_grid(1.0, 0.01, 20.0, 5);
  for (const auto& model : models) {
    const auto taus = draw_taus(200, 30, 12, 5);
    std::vector<double> ref;
    serial::concentration_sums(model, 200, taus, 150, 9, ref);
    std::vector<double> lref;
    const auto pooled = dist::empirical_cdf(ref);
    serial::levy_rows(ref, 12, 150, pooled, lref);
    CltOutputs cref;
    serial::clt_paths(model, 200, 30, ts, taus, 40, 9, cref);
    for (int workers : {1, 2, 4, 7}) {
      CAPTURE(workers);
      std::vector<double> got;
      omp::concentration_sums(model, 200, taus, 150, 9, got, workers);
      CHECK(same_bits(got, ref));
      std::vector<double> lgot;
      omp::levy_rows(ref, 12, 150, pooled, lgot, workers);
      CHECK(same_bits(lgot, lref));
      CltOutputs cgot;
      omp::clt_paths(model, 200, 30, ts, taus, 40, 9, cgot, workers);
      CHECK(same_bits(cgot.f, cref.f));
      CHECK(same_bits(cgot.g, cref.g));
      CHECK(same_bits(cgot.h, cref.h));
      CHECK(same_bits(cgot.sums, cref.sums));
    }
  }
  for (const auto& model : {proc::SequenceModel(proc::ExchangeableUrn{pop}),
                            proc::SequenceModel(proc::DeFinettiMixture{
                                {{proc::MixtureComponent::Kind::Gaussian, {}},
                                 {proc::MixtureComponent::Kind::Discrete,
                                  proc::DiscreteDist::make({-1.0, 1.0}, {0.5, 0.5})}},
                                {0.5, 0.5}})}) {
    ExchangeDraws ref;
    serial::exchangeable_draws(model, 25, 100, 300, 4, ref);
    for (int workers : {2, 4}) {
      ExchangeDraws got;
      omp::exchangeable_draws(model, 25, 100, 300, 4, got, workers);
      CHECK(same_bits(got.s, ref.s));
      CHECK(same_bits(got.zeta, ref.zeta));
      CHECK(same_bits(got.eta, ref.eta));
    }
  }
}
