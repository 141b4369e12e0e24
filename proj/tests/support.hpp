#pragma once

// Hand-rolled generators and independent oracles shared by the tests. The
// oracles avoid the library code paths they check: subsets come from bit
// masks, distances from dense breakpoint scans.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "conclab/dist_metrics.hpp"

namespace testing {

using cplx = std::complex<double>;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }

  cplx disk() {
    const double r = std::sqrt(uniform());
    return std::polar(r, uniform(0.0, 2.0 * M_PI));
  }

  std::vector<cplx> disk_vector(std::size_t n) {
    std::vector<cplx> z(n);
    for (auto& x : z) x = disk();
    return z;
  }

  /// Discrete law with 1..max_atoms atoms on a coarse grid in [lo, hi], so
  /// that ties and near-ties between two draws are common.
  conclab::dist::StepCdf step_cdf(int max_atoms, double lo = -2.0, double hi = 2.0) {
    const int m = integer(1, max_atoms);
    std::map<double, double> mass;
    for (int i = 0; i < m; ++i) {
      const double x = std::round(uniform(lo, hi) * 20.0) / 20.0;
      mass[x] += uniform(0.05, 1.0);
    }
    double total = 0.0;
    for (auto& [x, p] : mass) total += p;
    std::vector<double> jumps;
    std::vector<double> cum;
    double run = 0.0;
    for (auto& [x, p] : mass) {
      run += p / total;
      jumps.push_back(x);
      cum.push_back(run);
    }
    cum.back() = 1.0;
    return {jumps, cum};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// sigma_k by literal enumeration of k-subsets as bit masks (n <= 20).
inline cplx subset_sigma(const std::vector<cplx>& z, int k) {
  const int n = static_cast<int>(z.size());
  cplx sum = 0.0;
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) prod *= z[static_cast<std::size_t>(i)];
    }
    sum += prod;
    ++count;
  }
  return sum / static_cast<double>(count);
}

/// Slice vertices as bit masks in increasing numeric order of the reversed
/// word, which is the lexicographic order of the sorted index lists.
inline std::vector<std::uint32_t> slice_masks(int n, int k) {
  std::vector<std::vector<int>> sets;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) s.push_back(i + 1);
    }
    sets.push_back(s);
  }
  std::sort(sets.begin(), sets.end());
  std::vector<std::uint32_t> out;
  for (const auto& s : sets) {
    std::uint32_t m = 0;
    for (int i : s) m |= 1U << (i - 1);
    out.push_back(m);
  }
  return out;
}

/// Graph Laplacian of the slice from mask adjacency (Hamming distance 2).
inline Eigen::MatrixXd slice_laplacian(int n, int k) {
  const auto masks = slice_masks(n, k);
  const auto v = static_cast<Eigen::Index>(masks.size());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(v, v);
  for (Eigen::Index a = 0; a < v; ++a) {
    for (Eigen::Index b = 0; b < v; ++b) {
      if (a != b && std::popcount(masks[a] ^ masks[b]) == 2) {
        l(a, b) = -1.0;
        l(a, a) += 1.0;
      }
    }
  }
  return l;
}

/// Feasibility of delta for the Levy distance, checked at every breakpoint
/// of both sides of the defining inequalities and at the midpoints between
/// them; the step functions are constant in between.
inline bool levy_feasible(const conclab::dist::StepCdf& f, const conclab::dist::StepCdf& g, double d) {
  std::vector<double> b;
  for (double x : f.jumps()) {
    b.push_back(x - d);
    b.push_back(x + d);
  }
  for (double x : g.jumps()) b.push_back(x);
  std::sort(b.begin(), b.end());
  std::vector<double> probe = b;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) probe.push_back(0.5 * (b[i] + b[i + 1]));
  probe.push_back(b.front() - 1.0);
  probe.push_back(b.back() + 1.0);
  const double eps = 1e-13;
  for (double x : probe) {
    if (f(x - d) - d > g(x) + eps) return false;
    if (g(x) > f(x + d) + d + eps) return false;
  }
  return true;
}

/// Smallest delta on the 1e-6 grid satisfying the Levy condition, found by
/// nested scans at 1e-2, 1e-4 and 1e-6 (feasibility is monotone in delta).
inline double levy_grid_oracle(const conclab::dist::StepCdf& f, const conclab::dist::StepCdf& g) {
  std::int64_t units = 0;  // multiples of 1e-6
  for (std::int64_t step : {10000, 100, 1}) {
    // `units` is infeasible (or zero on the first pass).
    std::int64_t i = units;
    while (i < 1000000 && !levy_feasible(f, g, static_cast<double>(i) * 1e-6)) i += step;
    if (i == 0) return 0.0;
    units = i - step;
  }
  return static_cast<double>(units + 1) * 1e-6;
}

/// sup |F - G| from values and left limits at every jump of either function.
inline double kolmogorov_oracle(const conclab::dist::StepCdf& f, const conclab::dist::StepCdf& g) {
  double best = 0.0;
  auto scan = [&](const conclab::dist::StepCdf& h) {
    for (double x : h.jumps()) {
      best = std::max(best, std::abs(f(x) - g(x)));
      best = std::max(best, std::abs(f.left_limit(x) - g.left_limit(x)));
    }
  };
  scan(f);
  scan(g);
  return best;
}

}  // namespace testing
