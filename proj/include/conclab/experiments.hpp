#pragma once

#include <span>
#include <string>
#include <vector>

#include "conclab/config.hpp"
#include "conclab/report.hpp"

namespace conclab::exp {

struct RunOptions {
  /// 1 runs the serial reference kernels; more runs the OpenMP kernels.
  int workers = 1;
};

/// Levy distances L(F_tau, F) over shared sample paths, F pooled over all
/// sampled tau.
ExperimentReport run_concentration(const cfg::ConcentrationConfig& c, const RunOptions& opt = {});

/// Per-path f_w = sigma_k(w), g_w = wbar^k and h_w on the proof grid, their
/// averages, and L(F, Phi_R) for the pooled normalized sums.
ExperimentReport run_clt(const cfg::CltConfig& c, const RunOptions& opt = {});

/// Kolmogorov distance of S_k to Phi for exchangeable models, with the
/// smoothing and total-variation side bounds.
ExperimentReport run_exchangeable(const cfg::ExchangeableConfig& c, const RunOptions& opt = {});

/// A model on a finite probability space: omega = 0..size()-1 with
/// probabilities prob(w) and path values row(w) = (X_1(w), ..., X_n(w)).
class FiniteOmegaModel {
 public:
  /// Validates probabilities and E X_i X_j = delta_ij within 1e-9; a
  /// violation throws PreconditionError.
  FiniteOmegaModel(std::string name, int n, std::vector<double> probs, std::vector<double> values);

  /// Independent two-point coordinates: X_j takes sqrt((1-p_j)/p_j) with
  /// probability p_j and -sqrt(p_j/(1-p_j)) otherwise.
  static FiniteOmegaModel two_point(std::span<const double> p);
  /// X_j(w) = sqrt(2) cos(2 pi j w) with w uniform on {0, 1/m, ..., (m-1)/m};
  /// orthonormal when m > 2n.
  static FiniteOmegaModel trig_grid(int n, int m);
  /// Exact enumeration of a SequenceModel with finite support (Rademacher,
  /// ScaledRademacher, mixtures of discrete components). Anything else throws
  /// PreconditionError.
  static FiniteOmegaModel from_model(const proc::SequenceModel& model, int n);

  const std::string& name() const noexcept { return name_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double prob(std::size_t w) const noexcept { return probs_[w]; }
  std::span<const double> row(std::size_t w) const noexcept {
    return {values_.data() + w * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }

  nlohmann::json to_json() const;
  static FiniteOmegaModel from_json(const nlohmann::json& j);

 private:
  std::string name_;
  int n_;
  std::vector<double> probs_;
  std::vector<double> values_;
};

/// Exact |grad f_tau(t)| over the whole slice against (|t| + t^2) sqrt(n/k).
ExperimentReport run_char_gradient_check(const FiniteOmegaModel& model, int k,
                                         std::span<const double> ts);

/// Re-runs the experiment recorded in `report`. Throws VersionError when the
/// recorded config version is not the current one.
ExperimentReport reproduce(const ExperimentReport& report, const RunOptions& opt = {});

/// Type-7 sample quantile of an ascending sequence.
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace conclab::exp
