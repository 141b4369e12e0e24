#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace conclab::dist {

/// Right-continuous step distribution function: F(x) = cum[j] for the largest
/// jumps[j] <= x, and 0 left of jumps[0].
class StepCdf {
 public:
  /// Validates strictly increasing finite jumps, 0 < cum[0], nondecreasing cum
  /// and |cum.back() - 1| <= 1e-12. The last value is stored as exactly 1.
  StepCdf(std::vector<double> jumps, std::vector<double> cum);

  double operator()(double x) const noexcept;
  /// F(x-), the limit from the left.
  double left_limit(double x) const noexcept;

  std::span<const double> jumps() const noexcept { return jumps_; }
  std::span<const double> cum() const noexcept { return cum_; }
  std::size_t size() const noexcept { return jumps_.size(); }
  /// Mass of the i-th atom.
  double mass(std::size_t i) const noexcept { return i == 0 ? cum_[0] : cum_[i] - cum_[i - 1]; }

  friend bool operator==(const StepCdf&, const StepCdf&) = default;

 private:
  std::vector<double> jumps_;
  std::vector<double> cum_;
};

/// Empirical distribution with exact sample multiplicities.
StepCdf empirical_cdf(std::span<const double> samples);

/// Pointwise convex combination sum_j w_j F_j on the union of jump sets.
StepCdf average_cdf(std::span<const StepCdf> cdfs, std::span<const double> weights);

/// Lévy distance by bisection on delta in [0,1]; each feasibility test walks
/// the plateaus of one function and evaluates the other at the shifted ends.
double levy_distance(const StepCdf& f, const StepCdf& g);
/// Same against a continuous distribution function.
double levy_distance(const StepCdf& f, const std::function<double(double)>& g);

double kolmogorov_distance(const StepCdf& f, const StepCdf& g);
double kolmogorov_distance(const StepCdf& f, const std::function<double(double)>& g);

struct CharGrid {
  std::vector<double> ts;
  std::vector<std::complex<double>> vals;
};

/// Empirical characteristic function on the grid `ts` (strictly increasing,
/// positive).
CharGrid char_fn(std::span<const double> samples, std::span<const double> ts);
/// Exact characteristic function of a discrete distribution.
CharGrid char_fn(const StepCdf& f, std::span<const double> ts);

/// max over the common grid of |a(t) - b(t)| / t.
double bohman_gap(const CharGrid& a, const CharGrid& b);

/// t_r = r h^2 for r = 1..floor(2/h^3)+1, merged with `log_points`
/// logarithmically spaced points on [t_min, t_max]; sorted, deduplicated.
std::vector<double> proof_grid(double h, double t_min, double t_max, int log_points);

double normal_cdf(double x) noexcept;

/// Distribution function of R zeta at x, R given by equally weighted samples.
double mixture_normal_cdf(std::span<const double> r_samples, double x);
/// Same with R given by atoms and probabilities.
double mixture_normal_cdf(std::span<const double> atoms, std::span<const double> probs, double x);

struct SmoothingResult {
  double levy;
  double bound;  // (mean eta^2)^{1/3}
};

SmoothingResult smoothing_check(std::span<const double> zeta, std::span<const double> eta);

/// 1.36 / sqrt(n).
double dkw_tolerance(std::size_t n);

void write_csv(std::ostream& out, const StepCdf& f);
StepCdf read_csv(std::istream& in);

nlohmann::json to_json(const StepCdf& f);
StepCdf step_cdf_from_json(const nlohmann::json& j);

}  // namespace conclab::dist
