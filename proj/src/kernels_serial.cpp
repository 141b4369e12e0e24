#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "conclab/error.hpp"
#include "conclab/kernels.hpp"
#include "conclab/sympoly.hpp"

namespace conclab::kernels {

TauSet draw_taus(int n, int k, std::size_t count, std::uint64_t seed) {
  if (n < 1 || k < 1 || k > n) throw DomainError("index sets need 1 <= k <= n");
  TauSet set{n, k, count, std::vector<int>(count * static_cast<std::size_t>(k))};
  std::vector<int> pool(n);
  for (std::size_t j = 0; j < count; ++j) {
    Stream rng(seed, "tau", j);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < k; ++i) {
      const auto r = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[r]);
    }
    std::sort(pool.begin(), pool.begin() + k);
    std::copy(pool.begin(), pool.begin() + k, set.indices.begin() + static_cast<long>(j * k));
  }
  return set;
}

namespace item {

double normalized_sum(std::span<const double> path, std::span<const int> tau) {
  double s = 0.0;
  for (int i : tau) s += path[static_cast<std::size_t>(i - 1)];
  return s / std::sqrt(static_cast<double>(tau.size()));
}

void concentration_path(proc::PathSampler& sampler, std::size_t i, const TauSet& taus,
                        std::size_t paths, std::uint64_t seed, std::vector<double>& path,
                        std::vector<double>& out) {
  Stream rng(seed, "path", i);
  path.resize(sampler.n());
  sampler.sample(rng, path);
  for (std::size_t j = 0; j < taus.count; ++j) out[j * paths + i] = normalized_sum(path, taus.tau(j));
}

void clt_path(proc::PathSampler& sampler, std::size_t i, int k, std::span<const double> ts,
              const TauSet& taus, std::uint64_t seed, std::vector<double>& path,
              std::vector<std::complex<double>>& w, std::vector<double>& work, CltOutputs& out) {
  Stream rng(seed, "path", i);
  path.resize(sampler.n());
  w.resize(sampler.n());
  sampler.sample(rng, path);

  const auto stats = proc::sample_stats(path);
  out.stats[i] = stats;
  const double root_k = std::sqrt(static_cast<double>(k));
  const std::size_t row = i * out.points;
  for (std::size_t p = 0; p < ts.size(); ++p) {
    const double t = ts[p];
    for (std::size_t j = 0; j < path.size(); ++j) w[j] = std::polar(1.0, t * path[j] / root_k);
    out.f[row + p] = sympoly::sigma_k(w, k, work);
    out.g[row + p] = sympoly::power_of_mean(w, k);
    out.h[row + p] = std::polar(std::exp(-stats.variance * t * t / 2.0), root_k * stats.mean * t);
  }
  for (std::size_t j = 0; j < taus.count; ++j) {
    out.sums[i * out.taus + j] = normalized_sum(path, taus.tau(j));
  }
}

ExchangeSetup exchange_setup(const proc::SequenceModel& model, int k, std::size_t extension) {
  if (k < 1) throw DomainError("k must be positive");
  if (const auto* urn = std::get_if<proc::ExchangeableUrn>(&model)) {
    if (static_cast<std::size_t>(k) > urn->population.size()) {
      throw DomainError("k = " + std::to_string(k) + " exceeds the urn size " +
                        std::to_string(urn->population.size()));
    }
    // The urn extends exchangeably to the whole population, so Xbar and
    // sigma over the extension are population constants.
    const auto stats = proc::sample_stats(urn->population);
    return {static_cast<std::size_t>(k), true, stats.mean, std::sqrt(stats.variance)};
  }
  if (extension < static_cast<std::size_t>(k)) {
    throw DomainError("extension length must be at least k");
  }
  return {extension, false, 0.0, 0.0};
}

void exchange_draw(proc::PathSampler& sampler, const ExchangeSetup& setup, int k, std::size_t i,
                   std::uint64_t seed, std::vector<double>& path, ExchangeDraws& out) {
  Stream rng(seed, "sample", i);
  path.resize(setup.length);
  sampler.sample(rng, path);
  double s = 0.0;
  for (int j = 0; j < k; ++j) s += path[static_cast<std::size_t>(j)];
  const double root_k = std::sqrt(static_cast<double>(k));
  out.s[i] = s / root_k;
  double xbar = setup.xbar;
  double sigma = setup.sigma;
  if (!setup.fixed_moments) {
    const auto stats = proc::sample_stats(path);
    xbar = stats.mean;
    sigma = std::sqrt(stats.variance);
  }
  const double zeta = rng.normal();
  out.zeta[i] = zeta;
  out.eta[i] = root_k * xbar + (sigma - 1.0) * zeta;
}

}  // namespace item

void prepare_clt(CltOutputs& out, std::size_t paths, std::size_t points, std::size_t taus) {
  out.paths = paths;
  out.points = points;
  out.taus = taus;
  out.f.assign(paths * points, {});
  out.g.assign(paths * points, {});
  out.h.assign(paths * points, {});
  out.stats.assign(paths, {});
  out.sums.assign(paths * taus, 0.0);
}

namespace serial {

void concentration_sums(const proc::SequenceModel& model, std::size_t n, const TauSet& taus,
                        std::size_t paths, std::uint64_t seed, std::vector<double>& out) {
  out.assign(taus.count * paths, 0.0);
  proc::PathSampler sampler(model, n);
  std::vector<double> path;
  for (std::size_t i = 0; i < paths; ++i) item::concentration_path(sampler, i, taus, paths, seed, path, out);
}

void levy_rows(std::span<const double> rows, std::size_t row_count, std::size_t row_length,
               const dist::StepCdf& ref, std::vector<double>& out) {
  out.assign(row_count, 0.0);
  for (std::size_t j = 0; j < row_count; ++j) {
    out[j] = dist::levy_distance(dist::empirical_cdf(rows.subspan(j * row_length, row_length)), ref);
  }
}

void clt_paths(const proc::SequenceModel& model, std::size_t n, int k, std::span<const double> ts,
               const TauSet& taus, std::size_t paths, std::uint64_t seed, CltOutputs& out) {
  prepare_clt(out, paths, ts.size(), taus.count);
  proc::PathSampler sampler(model, n);
  std::vector<double> path;
  std::vector<std::complex<double>> w;
  std::vector<double> work;
  for (std::size_t i = 0; i < paths; ++i) item::clt_path(sampler, i, k, ts, taus, seed, path, w, work, out);
}

void exchangeable_draws(const proc::SequenceModel& model, int k, std::size_t extension,
                        std::size_t samples, std::uint64_t seed, ExchangeDraws& out) {
  const auto setup = item::exchange_setup(model, k, extension);
  out.s.assign(samples, 0.0);
  out.zeta.assign(samples, 0.0);
  out.eta.assign(samples, 0.0);
  proc::PathSampler sampler(model, setup.length);
  std::vector<double> path;
  for (std::size_t i = 0; i < samples; ++i) item::exchange_draw(sampler, setup, k, i, seed, path, out);
}

}  // namespace serial

}  // namespace conclab::kernels
