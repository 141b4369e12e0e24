#include <omp.h>

#include "conclab/kernels.hpp"

namespace conclab::kernels::omp {

namespace {

int threads(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

}  // namespace

void concentration_sums(const proc::SequenceModel& model, std::size_t n, const TauSet& taus,
                        std::size_t paths, std::uint64_t seed, std::vector<double>& out,
                        int workers) {
  out.assign(taus.count * paths, 0.0);
  proc::PathSampler probe(model, n);  // validates before entering the region
#pragma omp parallel num_threads(threads(workers))
  {
    proc::PathSampler sampler(model, n);
    std::vector<double> path;
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < paths; ++i) {
      item::concentration_path(sampler, i, taus, paths, seed, path, out);
    }
  }
}

void levy_rows(std::span<const double> rows, std::size_t row_count, std::size_t row_length,
               const dist::StepCdf& ref, std::vector<double>& out, int workers) {
  out.assign(row_count, 0.0);
#pragma omp parallel for schedule(dynamic) num_threads(threads(workers))
  for (std::size_t j = 0; j < row_count; ++j) {
    out[j] = dist::levy_distance(dist::empirical_cdf(rows.subspan(j * row_length, row_length)), ref);
  }
}

void clt_paths(const proc::SequenceModel& model, std::size_t n, int k, std::span<const double> ts,
               const TauSet& taus, std::size_t paths, std::uint64_t seed, CltOutputs& out,
               int workers) {
  prepare_clt(out, paths, ts.size(), taus.count);
  proc::PathSampler probe(model, n);
#pragma omp parallel num_threads(threads(workers))
  {
    proc::PathSampler sampler(model, n);
    std::vector<double> path;
    std::vector<std::complex<double>> w;
    std::vector<double> work;
#pragma omp for schedule(dynamic, 16)
    for (std::size_t i = 0; i < paths; ++i) {
      item::clt_path(sampler, i, k, ts, taus, seed, path, w, work, out);
    }
  }
}

void exchangeable_draws(const proc::SequenceModel& model, int k, std::size_t extension,
                        std::size_t samples, std::uint64_t seed, ExchangeDraws& out, int workers) {
  const auto setup = item::exchange_setup(model, k, extension);
  out.s.assign(samples, 0.0);
  out.zeta.assign(samples, 0.0);
  out.eta.assign(samples, 0.0);
  proc::PathSampler probe(model, setup.length);
#pragma omp parallel num_threads(threads(workers))
  {
    proc::PathSampler sampler(model, setup.length);
    std::vector<double> path;
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < samples; ++i) {
      item::exchange_draw(sampler, setup, k, i, seed, path, out);
    }
  }
}

}  // namespace conclab::kernels::omp
