#include "conclab/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "conclab/error.hpp"
#include "conclab/slice_graph.hpp"

namespace conclab::sympoly {

namespace {

void require_k(std::size_t n, int k, int k_min = 1) {
  if (k < k_min || static_cast<std::size_t>(k) > n) {
    throw DomainError("k = " + std::to_string(k) + " outside [" + std::to_string(k_min) + ", " +
                      std::to_string(n) + "]");
  }
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

ComplexSequence::ComplexSequence(std::vector<cplx> entries, bool unit_disk)
    : entries_(std::move(entries)), unit_disk_(unit_disk) {
  for (const cplx& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("complex sequence entry is not finite");
    }
    if (unit_disk_ && std::abs(z) > 1.0 + 1e-12) {
      throw PreconditionError("entry of modulus " + std::to_string(std::abs(z)) +
                              " violates the unit-disk assertion");
    }
  }
}

ComplexSequence ComplexSequence::without(std::size_t j) const {
  std::vector<cplx> rest;
  rest.reserve(entries_.size() - 1);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i != j) rest.push_back(entries_[i]);
  }
  return ComplexSequence(std::move(rest), unit_disk_);
}

cplx sigma_k(std::span<const cplx> z, int k, std::vector<double>& work) {
  const int n = static_cast<int>(z.size());
  require_k(z.size(), k);
  const auto width = static_cast<std::size_t>(k + 1);
  work.assign(4 * width, 0.0);
  double* old_re = work.data();
  double* old_im = old_re + width;
  double* new_re = old_im + width;
  double* new_im = new_re + width;
  old_re[0] = new_re[0] = 1.0;

  for (int j = 1; j <= n; ++j) {
    // Only s_{j,m} with m >= k - (n - j) can still reach s_{n,k}.
    const int lo = std::max(1, k - (n - j));
    const int hi = std::min(j, k);
    const double zr = z[j - 1].real();
    const double zi = z[j - 1].imag();
    const double inv_j = 1.0 / j;
    for (int m = lo; m <= hi; ++m) {
      const double a = (j - m) * inv_j;
      const double b = m * inv_j;
      new_re[m] = old_re[m] * a + (zr * old_re[m - 1] - zi * old_im[m - 1]) * b;
      new_im[m] = old_im[m] * a + (zr * old_im[m - 1] + zi * old_re[m - 1]) * b;
    }
    std::swap(old_re, new_re);
    std::swap(old_im, new_im);
  }
  return {old_re[k], old_im[k]};
}

cplx sigma_k(std::span<const cplx> z, int k) {
  std::vector<double> work;
  return sigma_k(z, k, work);
}

cplx sigma_k(const ComplexSequence& z, int k) { return sigma_k(z.entries(), k); }

cplx power_of_mean(std::span<const cplx> z, int k) {
  if (z.empty()) throw DomainError("power_of_mean of an empty sequence");
  if (k < 0) throw DomainError("power_of_mean needs k >= 0");
  cplx base = std::accumulate(z.begin(), z.end(), cplx{}) / static_cast<double>(z.size());
  cplx result = 1.0;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}

cplx power_of_mean(const ComplexSequence& z, int k) { return power_of_mean(z.entries(), k); }

Prop41Gap prop41_gap(const ComplexSequence& z, int k) {
  if (!z.unit_disk()) throw PreconditionError("prop41_gap requires the unit_disk flag");
  if (z.size() < 2) throw DomainError("prop41_gap requires n >= 2");
  require_k(z.size(), k);
  const double n = static_cast<double>(z.size());
  return {std::abs(sigma_k(z, k) - power_of_mean(z, k)), 6.0 * (k - 1) / (n - 1.0)};
}

double sigma2_identity_residual(const ComplexSequence& z) {
  if (z.size() < 2) throw DomainError("sigma2 identity requires n >= 2");
  const double n = static_cast<double>(z.size());
  const cplx mean = power_of_mean(z, 1);
  cplx dev = 0.0;
  for (const cplx& v : z.entries()) dev += (v - mean) * (v - mean);
  const cplx lhs = sigma_k(z, 2) - mean * mean;
  const cplx rhs = -dev / (n * (n - 1.0));
  return std::abs(lhs - rhs);
}

double leave_one_out_residual(const ComplexSequence& z, int k) {
  if (z.size() < 2) throw DomainError("leave-one-out identity requires n >= 2");
  require_k(z.size(), k, 2);
  std::vector<double> work;
  std::vector<cplx> rest(z.size() - 1);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i != j) rest[w++] = z[i];
    }
    sum += z[j] * sigma_k(rest, k - 1, work);
  }
  return std::abs(sigma_k(z, k) - sum / static_cast<double>(z.size()));
}

double falling_ratio_complement(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("requires 1 <= k <= n");
  double log_ratio = 0.0;
  for (int i = 1; i < k; ++i) log_ratio += std::log1p(-static_cast<double>(i) / n);
  return 0.0 - std::expm1(log_ratio);
}

double crude_gap_bound(int n, int k) { return 2.0 * falling_ratio_complement(n, k); }

cplx sigma_k_bruteforce(const ComplexSequence& z, int k) {
  const int n = static_cast<int>(z.size());
  require_k(z.size(), k);
  const std::uint64_t count = slice::binomial(n, k);
  if (count > kBruteForceBudget) {
    throw BudgetError("brute-force sigma_k over C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") = " + std::to_string(count) + " subsets exceeds the budget",
                      count, kBruteForceBudget);
  }
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  CompensatedSum re;
  CompensatedSum im;
  while (true) {
    cplx p = 1.0;
    for (int i : c) p *= z[static_cast<std::size_t>(i)];
    re.add(p.real());
    im.add(p.imag());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  const double denom = static_cast<double>(count);
  return {re.value() / denom, im.value() / denom};
}

}  // namespace conclab::sympoly
