#pragma once

// Normalized elementary symmetric polynomials
//   sigma_k(z) = C(n,k)^{-1} sum_{i_1 < ... < i_k} z_{i_1} ... z_{i_k}.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace conclab::sympoly {

using cplx = std::complex<double>;

class ComplexSequence {
 public:
  /// With `unit_disk` set the caller asserts max |z_j| <= 1 + 1e-12; this is
  /// validated, never enforced by projection.
  explicit ComplexSequence(std::vector<cplx> entries, bool unit_disk = false);

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool unit_disk() const noexcept { return unit_disk_; }
  cplx operator[](std::size_t i) const noexcept { return entries_[i]; }

  /// The sequence with entry j removed.
  ComplexSequence without(std::size_t j) const;

 private:
  std::vector<cplx> entries_;
  bool unit_disk_;
};

/// O(nk) convex-coefficient recursion
///   s_{j,m} = s_{j-1,m} (j-m)/j + z_j s_{j-1,m-1} m/j,   s_{j,0} = 1.
cplx sigma_k(const ComplexSequence& z, int k);
cplx sigma_k(std::span<const cplx> z, int k);

/// Scratch-buffer variant used by the hot loops; `work` is resized as needed.
cplx sigma_k(std::span<const cplx> z, int k, std::vector<double>& work);

/// zbar^k by repeated squaring.
cplx power_of_mean(const ComplexSequence& z, int k);
cplx power_of_mean(std::span<const cplx> z, int k);

struct Prop41Gap {
  double gap;    // |sigma_k(z) - zbar^k|
  double bound;  // 6(k-1)/(n-1)
};

/// Requires the unit_disk flag and n >= 2.
Prop41Gap prop41_gap(const ComplexSequence& z, int k);

/// |sigma_2(z) - zbar^2 + (n(n-1))^{-1} sum (z_j - zbar)^2|.
double sigma2_identity_residual(const ComplexSequence& z);

/// |sigma_k(z) - n^{-1} sum_j z_j sigma_{k-1}(z without j)|.
double leave_one_out_residual(const ComplexSequence& z, int k);

/// 2 (1 - k! C(n,k) / n^k), evaluated in log space.
double crude_gap_bound(int n, int k);

/// 1 - k! C(n,k) / n^k = 1 - prod_{i<k} (1 - i/n).
double falling_ratio_complement(int n, int k);

inline constexpr std::uint64_t kBruteForceBudget = 1'000'000;

/// Literal subset sum with compensated accumulation. Requires C(n,k) <= 1e6.
cplx sigma_k_bruteforce(const ComplexSequence& z, int k);

}  // namespace conclab::sympoly
