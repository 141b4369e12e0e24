#include "conclab/dist_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "conclab/error.hpp"

namespace conclab::dist {

StepCdf::StepCdf(std::vector<double> jumps, std::vector<double> cum)
    : jumps_(std::move(jumps)), cum_(std::move(cum)) {
  if (jumps_.empty() || jumps_.size() != cum_.size()) {
    throw DomainError("step cdf needs matching, nonempty jump and cum sequences");
  }
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    if (!std::isfinite(jumps_[i])) throw DomainError("step cdf jump is not finite");
    if (i > 0 && !(jumps_[i] > jumps_[i - 1])) {
      throw DomainError("step cdf jumps must be strictly increasing");
    }
    if (i > 0 && !(cum_[i] >= cum_[i - 1])) throw DomainError("step cdf cum must be nondecreasing");
  }
  if (!(cum_.front() > 0.0)) throw DomainError("step cdf first cum value must be positive");
  if (!(std::abs(cum_.back() - 1.0) <= 1e-12)) {
    throw DomainError("step cdf must end at 1 (got " + std::to_string(cum_.back()) + ")");
  }
  cum_.back() = 1.0;
  for (double& c : cum_) c = std::min(c, 1.0);
}

double StepCdf::operator()(double x) const noexcept {
  auto it = std::upper_bound(jumps_.begin(), jumps_.end(), x);
  return it == jumps_.begin() ? 0.0 : cum_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

double StepCdf::left_limit(double x) const noexcept {
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), x);
  return it == jumps_.begin() ? 0.0 : cum_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

StepCdf empirical_cdf(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("empirical cdf of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) throw DomainError("empirical cdf sample is not finite");
  }
  std::sort(sorted.begin(), sorted.end());
  const double size = static_cast<double>(sorted.size());
  std::vector<double> jumps;
  std::vector<double> cum;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    jumps.push_back(sorted[i]);
    cum.push_back(static_cast<double>(i + 1) / size);
  }
  return {std::move(jumps), std::move(cum)};
}

StepCdf average_cdf(std::span<const StepCdf> cdfs, std::span<const double> weights) {
  if (cdfs.empty() || cdfs.size() != weights.size()) {
    throw DomainError("average_cdf needs one weight per distribution");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("average_cdf weights must be nonnegative");
    total += w;
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) throw DomainError("average_cdf weights must sum to 1");

  std::vector<double> points;
  for (std::size_t j = 0; j < cdfs.size(); ++j) {
    if (weights[j] > 0.0) points.insert(points.end(), cdfs[j].jumps().begin(), cdfs[j].jumps().end());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Pointwise evaluation keeps each value identical to sum_j w_j F_j(x).
  std::vector<std::size_t> cursor(cdfs.size(), 0);
  std::vector<double> cum(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    double s = 0.0;
    for (std::size_t j = 0; j < cdfs.size(); ++j) {
      const auto jumps = cdfs[j].jumps();
      while (cursor[j] < jumps.size() && jumps[cursor[j]] <= points[p]) ++cursor[j];
      s += weights[j] * (cursor[j] == 0 ? 0.0 : cdfs[j].cum()[cursor[j] - 1]);
    }
    cum[p] = s;
  }
  return {std::move(points), std::move(cum)};
}

namespace {

// Is L(F, G) <= delta? F is a step function; G and G(x-) are callables.
template <class G, class GLeft>
bool levy_feasible(const StepCdf& f, const G& g, const GLeft& g_left, double delta) {
  const auto jumps = f.jumps();
  const auto cum = f.cum();
  double prev = 0.0;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (g_left(jumps[i] - delta) > prev + delta) return false;
    if (cum[i] > g(jumps[i] + delta) + delta) return false;
    prev = cum[i];
  }
  return true;
}

template <class Feasible>
double bisect_levy(const Feasible& feasible) {
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Both query sequences x_i - delta and x_i + delta increase with i, so G is
// evaluated by two forward cursors instead of binary searches.
bool levy_feasible_steps(const StepCdf& f, const StepCdf& g, double delta) {
  const auto fx = f.jumps();
  const auto fc = f.cum();
  const auto gx = g.jumps();
  const auto gc = g.cum();
  std::size_t below = 0;  // #{jumps of g < x_i - delta}
  std::size_t upto = 0;   // #{jumps of g <= x_i + delta}
  double prev = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const double lo = fx[i] - delta;
    const double hi = fx[i] + delta;
    while (below < gx.size() && gx[below] < lo) ++below;
    while (upto < gx.size() && gx[upto] <= hi) ++upto;
    const double g_left = below == 0 ? 0.0 : gc[below - 1];
    const double g_right = upto == 0 ? 0.0 : gc[upto - 1];
    if (g_left > prev + delta) return false;
    if (fc[i] > g_right + delta) return false;
    prev = fc[i];
  }
  return true;
}

}  // namespace

double levy_distance(const StepCdf& f, const StepCdf& g) {
  return bisect_levy([&](double d) { return levy_feasible_steps(f, g, d); });
}

double levy_distance(const StepCdf& f, const std::function<double(double)>& g) {
  return bisect_levy([&](double d) { return levy_feasible(f, g, g, d); });
}

double kolmogorov_distance(const StepCdf& f, const StepCdf& g) {
  double best = 0.0;
  auto scan = [&best](const StepCdf& a, const StepCdf& b) {
    for (double x : a.jumps()) best = std::max(best, std::abs(a(x) - b(x)));
  };
  scan(f, g);
  scan(g, f);
  return best;
}

double kolmogorov_distance(const StepCdf& f, const std::function<double(double)>& g) {
  double best = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double gx = g(f.jumps()[i]);
    best = std::max({best, std::abs(f.cum()[i] - gx), std::abs(prev - gx)});
    prev = f.cum()[i];
  }
  return best;
}

namespace {

void require_grid(std::span<const double> ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || (i > 0 && !(ts[i] > ts[i - 1]))) {
      throw DomainError("t-grid must be positive and strictly increasing");
    }
  }
}

}  // namespace

CharGrid char_fn(std::span<const double> samples, std::span<const double> ts) {
  if (samples.empty()) throw DomainError("char_fn of an empty sample");
  require_grid(ts);
  CharGrid out{{ts.begin(), ts.end()}, std::vector<std::complex<double>>(ts.size())};
  const double size = static_cast<double>(samples.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    double re = 0.0;
    double im = 0.0;
    for (double x : samples) {
      re += std::cos(ts[j] * x);
      im += std::sin(ts[j] * x);
    }
    out.vals[j] = {re / size, im / size};
  }
  return out;
}

CharGrid char_fn(const StepCdf& f, std::span<const double> ts) {
  require_grid(ts);
  CharGrid out{{ts.begin(), ts.end()}, std::vector<std::complex<double>>(ts.size())};
  for (std::size_t j = 0; j < ts.size(); ++j) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.mass(i) * std::polar(1.0, ts[j] * f.jumps()[i]);
    out.vals[j] = s;
  }
  return out;
}

double bohman_gap(const CharGrid& a, const CharGrid& b) {
  if (a.ts != b.ts || a.vals.size() != a.ts.size() || b.vals.size() != b.ts.size()) {
    throw DomainError("bohman_gap needs identical t-grids");
  }
  double best = 0.0;
  for (std::size_t j = 0; j < a.ts.size(); ++j) {
    best = std::max(best, std::abs(a.vals[j] - b.vals[j]) / a.ts[j]);
  }
  return best;
}

std::vector<double> proof_grid(double h, double t_min, double t_max, int log_points) {
  if (!(h > 0.0)) throw DomainError("proof grid step h must be positive");
  if (log_points < 0 || (log_points > 0 && !(t_min > 0.0 && t_max >= t_min))) {
    throw DomainError("log grid needs 0 < t_min <= t_max");
  }
  std::vector<double> ts;
  const auto count = static_cast<long>(std::floor(2.0 / (h * h * h))) + 1;
  for (long r = 1; r <= count; ++r) ts.push_back(static_cast<double>(r) * h * h);
  if (log_points == 1) ts.push_back(t_min);
  if (log_points > 1) {
    const double a = std::log(t_min);
    const double step = (std::log(t_max) - a) / (log_points - 1);
    for (int i = 0; i < log_points; ++i) ts.push_back(std::exp(a + step * i));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

double scaled_normal(double r, double x) {
  if (r < 0.0) throw DomainError("mixture scale must be nonnegative");
  if (r == 0.0) return x >= 0.0 ? 1.0 : 0.0;
  return normal_cdf(x / r);
}

}  // namespace

double mixture_normal_cdf(std::span<const double> r_samples, double x) {
  if (r_samples.empty()) throw DomainError("mixture_normal_cdf needs at least one scale");
  double s = 0.0;
  for (double r : r_samples) s += scaled_normal(r, x);
  return s / static_cast<double>(r_samples.size());
}

double mixture_normal_cdf(std::span<const double> atoms, std::span<const double> probs, double x) {
  if (atoms.empty() || atoms.size() != probs.size()) {
    throw DomainError("mixture_normal_cdf needs one probability per atom");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) s += probs[i] * scaled_normal(atoms[i], x);
  return s;
}

SmoothingResult smoothing_check(std::span<const double> zeta, std::span<const double> eta) {
  if (zeta.empty() || zeta.size() != eta.size()) {
    throw DomainError("smoothing_check needs paired samples of equal length");
  }
  std::vector<double> sum(zeta.size());
  double second = 0.0;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    sum[i] = zeta[i] + eta[i];
    second += eta[i] * eta[i];
  }
  second /= static_cast<double>(eta.size());
  return {levy_distance(empirical_cdf(sum), empirical_cdf(zeta)), std::cbrt(second)};
}

double dkw_tolerance(std::size_t n) { return 1.36 / std::sqrt(static_cast<double>(n)); }

void write_csv(std::ostream& out, const StepCdf& f) {
  out << "jump,cum\n";
  char buf[64];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.jumps()[i], f.cum()[i]);
    out << buf;
  }
}

StepCdf read_csv(std::istream& in) {
  std::string line;
  bool have = false;
  while ((have = static_cast<bool>(std::getline(in, line))) && line.rfind('#', 0) == 0) {
  }
  if (!have || line.rfind("jump,cum", 0) != 0) {
    throw DomainError("step cdf csv must start with the header 'jump,cum'");
  }
  std::vector<double> jumps;
  std::vector<double> cum;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    char* end = nullptr;
    const double x = std::strtod(line.c_str(), &end);
    if (comma == std::string::npos || end != line.c_str() + comma) {
      throw DomainError("step cdf csv row " + std::to_string(row) + " is malformed");
    }
    const char* rest = line.c_str() + comma + 1;
    const double c = std::strtod(rest, &end);
    if (end == rest) throw DomainError("step cdf csv row " + std::to_string(row) + " is malformed");
    jumps.push_back(x);
    cum.push_back(c);
  }
  return {std::move(jumps), std::move(cum)};
}

nlohmann::json to_json(const StepCdf& f) {
  return {{"jumps", std::vector<double>(f.jumps().begin(), f.jumps().end())},
          {"cum", std::vector<double>(f.cum().begin(), f.cum().end())}};
}

StepCdf step_cdf_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("jumps") || !j.contains("cum")) {
    throw DomainError("step cdf json needs 'jumps' and 'cum' arrays");
  }
  return {j.at("jumps").get<std::vector<double>>(), j.at("cum").get<std::vector<double>>()};
}

}  // namespace conclab::dist
