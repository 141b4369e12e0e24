#pragma once

// Monte Carlo kernels behind the experiments. Every kernel exists twice:
// kernels::serial is the reference loop, kernels::omp the OpenMP version.
// Both call the same per-item routines and write each result to a fixed
// slot, so their outputs are bitwise equal for any worker count.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "conclab/dist_metrics.hpp"
#include "conclab/processes.hpp"

namespace conclab::kernels {

/// `count` index sets of size k drawn uniformly from {1..n}, set j from the
/// stream (seed, "tau", j). k = n is allowed (every set is {1..n}).
struct TauSet {
  int n = 0;
  int k = 0;
  std::size_t count = 0;
  std::vector<int> indices;  // count x k, 1-based, each row ascending

  std::span<const int> tau(std::size_t j) const {
    return {indices.data() + j * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
  }
};

TauSet draw_taus(int n, int k, std::size_t count, std::uint64_t seed);

struct CltOutputs {
  std::size_t paths = 0;
  std::size_t points = 0;
  std::size_t taus = 0;
  std::vector<std::complex<double>> f;  // paths x points: sigma_k(w)
  std::vector<std::complex<double>> g;  // paths x points: wbar^k
  std::vector<std::complex<double>> h;  // paths x points: exp(i sqrt(k) Xbar t - sigma^2 t^2 / 2)
  std::vector<proc::PathStats> stats;   // per path
  std::vector<double> sums;             // paths x taus: S_tau(omega)
};

struct ExchangeDraws {
  std::vector<double> s;     // S_k
  std::vector<double> zeta;  // standard normal, independent of the path
  std::vector<double> eta;   // sqrt(k) Xbar + (sigma - 1) zeta; xi = zeta + eta
};

/// Sizes every output buffer of a CLT run.
void prepare_clt(CltOutputs& out, std::size_t paths, std::size_t points, std::size_t taus);

namespace item {

double normalized_sum(std::span<const double> path, std::span<const int> tau);

/// One path of the concentration experiment: column `i` of the sum matrix.
void concentration_path(proc::PathSampler& sampler, std::size_t i, const TauSet& taus,
                        std::size_t paths, std::uint64_t seed, std::vector<double>& path,
                        std::vector<double>& out);

struct ExchangeSetup {
  std::size_t length;     // sampled path length
  bool fixed_moments;     // urn: Xbar and sigma are population constants
  double xbar;
  double sigma;
};

ExchangeSetup exchange_setup(const proc::SequenceModel& model, int k, std::size_t extension);

void exchange_draw(proc::PathSampler& sampler, const ExchangeSetup& setup, int k, std::size_t i,
                   std::uint64_t seed, std::vector<double>& path, ExchangeDraws& out);

/// One path of the CLT experiment: fills row `i` of every output.
void clt_path(proc::PathSampler& sampler, std::size_t i, int k, std::span<const double> ts,
              const TauSet& taus, std::uint64_t seed, std::vector<double>& path,
              std::vector<std::complex<double>>& w, std::vector<double>& work, CltOutputs& out);

}  // namespace item

namespace serial {

/// out[j * paths + i] = S_{tau_j}(omega_i), path i from (seed, "path", i).
void concentration_sums(const proc::SequenceModel& model, std::size_t n, const TauSet& taus,
                        std::size_t paths, std::uint64_t seed, std::vector<double>& out);

/// out[j] = L(empirical cdf of row j of `rows`, ref).
void levy_rows(std::span<const double> rows, std::size_t row_count, std::size_t row_length,
               const dist::StepCdf& ref, std::vector<double>& out);

void clt_paths(const proc::SequenceModel& model, std::size_t n, int k, std::span<const double> ts,
               const TauSet& taus, std::size_t paths, std::uint64_t seed, CltOutputs& out);

/// Draw i from (seed, "sample", i). `extension` is the length over which Xbar
/// and sigma are taken (the population size for the urn).
void exchangeable_draws(const proc::SequenceModel& model, int k, std::size_t extension,
                        std::size_t samples, std::uint64_t seed, ExchangeDraws& out);

}  // namespace serial

namespace omp {

void concentration_sums(const proc::SequenceModel& model, std::size_t n, const TauSet& taus,
                        std::size_t paths, std::uint64_t seed, std::vector<double>& out,
                        int workers);

void levy_rows(std::span<const double> rows, std::size_t row_count, std::size_t row_length,
               const dist::StepCdf& ref, std::vector<double>& out, int workers);

void clt_paths(const proc::SequenceModel& model, std::size_t n, int k, std::span<const double> ts,
               const TauSet& taus, std::size_t paths, std::uint64_t seed, CltOutputs& out,
               int workers);

void exchangeable_draws(const proc::SequenceModel& model, int k, std::size_t extension,
                        std::size_t samples, std::uint64_t seed, ExchangeDraws& out, int workers);

}  // namespace omp

}  // namespace conclab::kernels
