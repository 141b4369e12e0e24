// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "conclab/dist_metrics.hpp"
#include "conclab/kernels.hpp"
#include "conclab/processes.hpp"
#include "conclab/rng.hpp"
#include "conclab/sympoly.hpp"

namespace {

using namespace conclab;

constexpr std::size_t kN = 1024;
constexpr int kK = 128;
constexpr std::uint64_t kSeed = 11;

// Arg 0 selects the serial kernel; any other value is the worker count.
int workers_of(const benchmark::State& state) { return static_cast<int>(state.range(0)); }

void concentration(benchmark::State& state) {
  const proc::SequenceModel model = proc::IidRademacher{};
  const auto taus = kernels::draw_taus(kN, kK, 64, kSeed);
  std::vector<double> out;
  for (auto _ : state) {
    if (workers_of(state) == 0) {
      kernels::serial::concentration_sums(model, kN, taus, 2000, kSeed, out);
    } else {
      kernels::omp::concentration_sums(model, kN, taus, 2000, kSeed, out, workers_of(state));
    }
    benchmark::DoNotOptimize(out.data());
  }
}

void levy(benchmark::State& state) {
  const proc::SequenceModel model = proc::IidRademacher{};
  const auto taus = kernels::draw_taus(kN, kK, 64, kSeed);
  std::vector<double> sums;
  kernels::serial::concentration_sums(model, kN, taus, 2000, kSeed, sums);
  const auto pooled = dist::empirical_cdf(sums);
  std::vector<double> out;
  for (auto _ : state) {
    if (workers_of(state) == 0) {
      kernels::serial::levy_rows(sums, 64, 2000, pooled, out);
    } else {
      kernels::omp::levy_rows(sums, 64, 2000, pooled, out, workers_of(state));
    }
    benchmark::DoNotOptimize(out.data());
  }
}

void clt(benchmark::State& state) {
  const proc::SequenceModel model = proc::IidRademacher{};
  const auto taus = kernels::draw_taus(kN, kK, 8, kSeed);
  const auto ts = dist::proof_grid(1.0, 1e-3, 50.0, 16);
  kernels::CltOutputs out;
  for (auto _ : state) {
    if (workers_of(state) == 0) {
      kernels::serial::clt_paths(model, kN, kK, ts, taus, 200, kSeed, out);
    } else {
      kernels::omp::clt_paths(model, kN, kK, ts, taus, 200, kSeed, out, workers_of(state));
    }
    benchmark::DoNotOptimize(out.f.data());
  }
}

void exchangeable(benchmark::State& state) {
  const proc::SequenceModel model =
      proc::ExchangeableUrn{proc::urn_population("exponential", 10000, kSeed)};
  kernels::ExchangeDraws out;
  for (auto _ : state) {
    if (workers_of(state) == 0) {
      kernels::serial::exchangeable_draws(model, 64, 10000, 20000, kSeed, out);
    } else {
      kernels::omp::exchangeable_draws(model, 64, 10000, 20000, kSeed, out, workers_of(state));
    }
    benchmark::DoNotOptimize(out.s.data());
  }
}

void sigma_k_dp(benchmark::State& state) {
  std::vector<std::complex<double>> z(static_cast<std::size_t>(state.range(0)));
  Stream rng(kSeed, "bench", 0);
  const int k = static_cast<int>(z.size() / 4);
  // Points as the CLT kernel sees them: exp(i t X / sqrt(k)) at t = 1.
  for (auto& x : z) x = std::polar(1.0, rng.sign() / std::sqrt(static_cast<double>(k)));
  std::vector<double> work;
  for (auto _ : state) benchmark::DoNotOptimize(sympoly::sigma_k(z, k, work));
  state.SetComplexityN(state.range(0));
}

void worker_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int w = 1; w <= omp_get_max_threads(); w *= 2) b->Arg(w);
  b->ArgName("workers")->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(concentration)->Apply(worker_args);
BENCHMARK(levy)->Apply(worker_args);
BENCHMARK(clt)->Apply(worker_args);
BENCHMARK(exchangeable)->Apply(worker_args);
BENCHMARK(sigma_k_dp)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();
