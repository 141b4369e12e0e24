#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conclab/rng.hpp"
#include "conclab/slice_graph.hpp"

namespace conclab::proc {

/// Finite-support distribution given as (atom, probability) pairs.
struct DiscreteDist {
  std::vector<double> atoms;
  std::vector<double> probs;

  /// Validates matching sizes, finite atoms, probs >= 0 summing to 1 (1e-12).
  static DiscreteDist make(std::vector<double> atoms, std::vector<double> probs);
  static DiscreteDist point(double x) { return make({x}, {1.0}); }

  /// E X^p.
  double moment(int p) const;
  /// E |X|^p.
  double abs_moment(double p) const;
  double sample(Stream& rng) const;
};

struct IidRademacher {};
struct IidGaussian {};
/// X_j = sqrt(2) cos(2 pi j w), w uniform on [0, 1).
struct Trigonometric {};
/// X_j = R eps_j with one R >= 0 per path and eps_j i.i.d. signs; E R^2 = 1.
struct ScaledRademacher {
  DiscreteDist r;
};
struct MixtureComponent {
  enum class Kind { Gaussian, Discrete };
  Kind kind = Kind::Gaussian;
  DiscreteDist dist;  // used when kind == Discrete
};
/// One component drawn per path, then i.i.d. sampling from it.
struct DeFinettiMixture {
  std::vector<MixtureComponent> components;
  std::vector<double> weights;
};
/// Sampling without replacement from a standardized population.
struct ExchangeableUrn {
  std::vector<double> population;
};

using SequenceModel = std::variant<IidRademacher, IidGaussian, Trigonometric, ScaledRademacher,
                                   DeFinettiMixture, ExchangeableUrn>;

/// Throws DomainError when a variant's moment declarations do not hold:
/// R >= 0 with E R^2 = 1; mixture components with mean 0 and variance 1;
/// urn population with mean 0 and variance 1 (all within 1e-9).
void validate(const SequenceModel& model);

std::string_view model_tag(const SequenceModel& model);

/// Standardized population of `size` draws ("gaussian", "exponential" or
/// "rademacher") from the stream (seed, "population", 0).
std::vector<double> urn_population(std::string_view kind, std::size_t size, std::uint64_t seed);

struct SamplePath {
  std::vector<double> values;
  std::string model;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  std::uint64_t stream_tag = 0;
};

/// Reusable sampler for one model and length; holds per-worker scratch.
class PathSampler {
 public:
  PathSampler(const SequenceModel& model, std::size_t n);

  void sample(Stream& rng, std::span<double> out);
  std::size_t n() const noexcept { return n_; }

 private:
  const SequenceModel& model_;
  std::size_t n_;
  std::vector<std::uint32_t> perm_;
};

/// Errors: n = 0, or n > N for the urn.
SamplePath sample_path(const SequenceModel& model, std::size_t n, Stream& rng);

/// (X_{i_1} + ... + X_{i_k}) / sqrt(k).
double normalized_sum(std::span<const double> path, const slice::SubsetVertex& tau);
double normalized_sum(const SamplePath& path, const slice::SubsetVertex& tau);

struct PathStats {
  double mean;      // X bar
  double variance;  // (1/n) sum (X_j - X bar)^2
  double beta;      // (1/n) sum |X_j - X bar|^3
};

PathStats sample_stats(std::span<const double> values);
PathStats sample_stats(const SamplePath& path);

enum class Exchangeability { None, Finite, Infinite };

struct ModelFacts {
  std::string model;
  bool exact_orthonormal;  // E X_i X_j = delta_ij holds exactly
  double cross_moment;     // E X_i X_j for i != j
  bool mean_zero;
  bool iid;
  DiscreteDist limit_r;               // law of R in (1/n) sum X_j^2 -> R^2
  std::optional<double> beta;         // sup_j E |X_j|^3
  double fourth_moment;               // E X_1^4
  double cross_fourth;                // E X_1^2 X_2^2
  Exchangeability exchangeability;
  std::optional<std::size_t> extent;  // n(X) when finite
};

ModelFacts model_facts(const SequenceModel& model);

/// Total-variation bound 1 - k! C(n,k) / n^k for the finite de Finetti
/// approximation.
double definetti_tv_bound(int n, int k);

}  // namespace conclab::proc
