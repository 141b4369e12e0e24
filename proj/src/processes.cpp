#include "conclab/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "conclab/error.hpp"
#include "conclab/sympoly.hpp"

namespace conclab::proc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMomentTol = 1e-9;

const double kGaussianAbsThird = 2.0 * std::sqrt(2.0 / std::numbers::pi);

std::size_t pick(std::span<const double> probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding in the partial sums: fall back to the last atom with mass.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return 0;
}

void require_standard(double mean, double second, const std::string& what) {
  if (std::abs(mean) > kMomentTol || std::abs(second - 1.0) > kMomentTol) {
    throw DomainError(what + " must have mean 0 and variance 1 (got mean " + std::to_string(mean) +
                      ", second moment " + std::to_string(second) + ")");
  }
}

}  // namespace

DiscreteDist DiscreteDist::make(std::vector<double> atoms, std::vector<double> probs) {
  if (atoms.empty() || atoms.size() != probs.size()) {
    throw DomainError("discrete distribution needs one probability per atom");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw DomainError("discrete distribution atom is not finite");
    if (!(probs[i] >= 0.0)) throw DomainError("discrete distribution probability is negative");
    total += probs[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("discrete distribution probabilities must sum to 1");
  return {std::move(atoms), std::move(probs)};
}

double DiscreteDist::moment(int p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) s += probs[i] * std::pow(atoms[i], p);
  return s;
}

double DiscreteDist::abs_moment(double p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) s += probs[i] * std::pow(std::abs(atoms[i]), p);
  return s;
}

double DiscreteDist::sample(Stream& rng) const { return atoms[pick(probs, rng.uniform())]; }

void validate(const SequenceModel& model) {
  std::visit(overloaded{
                 [](const ScaledRademacher& m) {
                   for (double a : m.r.atoms) {
                     if (a < 0.0) throw DomainError("R must be nonnegative");
                   }
                   if (std::abs(m.r.moment(2) - 1.0) > kMomentTol) {
                     throw DomainError("R must satisfy E R^2 = 1 (got " +
                                       std::to_string(m.r.moment(2)) + ")");
                   }
                 },
                 [](const DeFinettiMixture& m) {
                   if (m.components.empty() || m.components.size() != m.weights.size()) {
                     throw DomainError("mixture needs one weight per component");
                   }
                   DiscreteDist::make(std::vector<double>(m.weights.size(), 0.0), m.weights);
                   for (std::size_t c = 0; c < m.components.size(); ++c) {
                     const auto& comp = m.components[c];
                     if (comp.kind == MixtureComponent::Kind::Discrete) {
                       require_standard(comp.dist.moment(1), comp.dist.moment(2),
                                        "mixture component " + std::to_string(c));
                     }
                   }
                 },
                 [](const ExchangeableUrn& m) {
                   if (m.population.size() < 2) throw DomainError("urn population needs N >= 2");
                   const double size = static_cast<double>(m.population.size());
                   double mean = 0.0;
                   double second = 0.0;
                   for (double x : m.population) {
                     if (!std::isfinite(x)) throw DomainError("urn population entry is not finite");
                     mean += x;
                     second += x * x;
                   }
                   require_standard(mean / size, second / size, "urn population");
                 },
                 [](const auto&) {},
             },
             model);
}

std::string_view model_tag(const SequenceModel& model) {
  return std::visit(overloaded{
                        [](const IidRademacher&) { return std::string_view("iid_rademacher"); },
                        [](const IidGaussian&) { return std::string_view("iid_gaussian"); },
                        [](const Trigonometric&) { return std::string_view("trigonometric"); },
                        [](const ScaledRademacher&) { return std::string_view("scaled_rademacher"); },
                        [](const DeFinettiMixture&) { return std::string_view("definetti_mixture"); },
                        [](const ExchangeableUrn&) { return std::string_view("exchangeable_urn"); },
                    },
                    model);
}

std::vector<double> urn_population(std::string_view kind, std::size_t size, std::uint64_t seed) {
  if (size < 2) throw DomainError("urn population needs at least 2 members");
  Stream rng(seed, "population", 0);
  std::vector<double> pop(size);
  for (double& x : pop) {
    if (kind == "gaussian") {
      x = rng.normal();
    } else if (kind == "exponential") {
      x = -std::log1p(-rng.uniform());
    } else if (kind == "rademacher") {
      x = rng.sign();
    } else {
      throw DomainError("unknown population kind '" + std::string(kind) + "'");
    }
  }
  const double n = static_cast<double>(size);
  const double mean = std::accumulate(pop.begin(), pop.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : pop) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  if (sd == 0.0) throw DomainError("urn population is constant; cannot standardize");
  for (double& x : pop) x = (x - mean) / sd;
  return pop;
}

PathSampler::PathSampler(const SequenceModel& model, std::size_t n) : model_(model), n_(n) {
  if (n == 0) throw DomainError("path length must be positive");
  if (const auto* urn = std::get_if<ExchangeableUrn>(&model)) {
    if (n > urn->population.size()) {
      throw DomainError("urn path length " + std::to_string(n) + " exceeds population size " +
                        std::to_string(urn->population.size()));
    }
    perm_.resize(urn->population.size());
    std::iota(perm_.begin(), perm_.end(), 0U);
  }
}

void PathSampler::sample(Stream& rng, std::span<double> out) {
  std::visit(overloaded{
                 [&](const IidRademacher&) {
                   for (double& x : out) x = rng.sign();
                 },
                 [&](const IidGaussian&) {
                   for (double& x : out) x = rng.normal();
                 },
                 [&](const Trigonometric&) {
                   const double w = rng.uniform();
                   for (std::size_t j = 0; j < out.size(); ++j) {
                     // cos(2 pi j w) depends only on the fractional part of j w.
                     const double jw = static_cast<double>(j + 1) * w;
                     out[j] = std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * (jw - std::floor(jw)));
                   }
                 },
                 [&](const ScaledRademacher& m) {
                   const double r = m.r.sample(rng);
                   for (double& x : out) x = r * rng.sign();
                 },
                 [&](const DeFinettiMixture& m) {
                   const auto& comp = m.components[pick(m.weights, rng.uniform())];
                   if (comp.kind == MixtureComponent::Kind::Gaussian) {
                     for (double& x : out) x = rng.normal();
                   } else {
                     for (double& x : out) x = comp.dist.sample(rng);
                   }
                 },
                 [&](const ExchangeableUrn& m) {
                   // Partial Fisher-Yates, then undo the swaps so the
                   // permutation is the identity again for the next path.
                   const std::size_t size = perm_.size();
                   std::vector<std::uint32_t> picks(out.size());
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     const auto j = i + rng.below(size - i);
                     picks[i] = static_cast<std::uint32_t>(j);
                     std::swap(perm_[i], perm_[j]);
                     out[i] = m.population[perm_[i]];
                   }
                   for (std::size_t i = out.size(); i-- > 0;) std::swap(perm_[i], perm_[picks[i]]);
                 },
             },
             model_);
}

SamplePath sample_path(const SequenceModel& model, std::size_t n, Stream& rng) {
  PathSampler sampler(model, n);
  SamplePath path{std::vector<double>(n), std::string(model_tag(model)), rng.seed(), rng.index(),
                  rng.tag_hash()};
  sampler.sample(rng, path.values);
  return path;
}

double normalized_sum(std::span<const double> path, const slice::SubsetVertex& tau) {
  if (tau.k() == 0) throw DomainError("normalized sum over an empty index set");
  double s = 0.0;
  for (int i : tau.indices()) {
    if (static_cast<std::size_t>(i) > path.size()) {
      throw DomainError("index " + std::to_string(i) + " exceeds path length " +
                        std::to_string(path.size()));
    }
    s += path[static_cast<std::size_t>(i - 1)];
  }
  return s / std::sqrt(static_cast<double>(tau.k()));
}

double normalized_sum(const SamplePath& path, const slice::SubsetVertex& tau) {
  return normalized_sum(path.values, tau);
}

PathStats sample_stats(std::span<const double> values) {
  if (values.empty()) throw DomainError("sample_stats of an empty path");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double second = 0.0;
  double third = 0.0;
  for (double x : values) {
    const double d = std::abs(x - mean);
    second += d * d;
    third += d * d * d;
  }
  return {mean, second / n, third / n};
}

PathStats sample_stats(const SamplePath& path) { return sample_stats(path.values); }

ModelFacts model_facts(const SequenceModel& model) {
  ModelFacts f{};
  f.model = std::string(model_tag(model));
  f.exact_orthonormal = true;
  f.cross_moment = 0.0;
  f.mean_zero = true;
  f.iid = false;
  f.limit_r = DiscreteDist::point(1.0);
  f.cross_fourth = 1.0;
  f.exchangeability = Exchangeability::Infinite;
  std::visit(overloaded{
                 [&](const IidRademacher&) {
                   f.iid = true;
                   f.beta = 1.0;
                   f.fourth_moment = 1.0;
                 },
                 [&](const IidGaussian&) {
                   f.iid = true;
                   f.beta = kGaussianAbsThird;
                   f.fourth_moment = 3.0;
                 },
                 [&](const Trigonometric&) {
                   f.beta = 2.0 * std::numbers::sqrt2;
                   f.fourth_moment = 1.5;
                   f.exchangeability = Exchangeability::None;
                 },
                 [&](const ScaledRademacher& m) {
                   f.limit_r = m.r;
                   f.beta = m.r.moment(3);
                   f.fourth_moment = m.r.moment(4);
                   f.cross_fourth = m.r.moment(4);
                 },
                 [&](const DeFinettiMixture& m) {
                   double beta = 0.0;
                   double fourth = 0.0;
                   for (std::size_t c = 0; c < m.components.size(); ++c) {
                     const auto& comp = m.components[c];
                     const bool gauss = comp.kind == MixtureComponent::Kind::Gaussian;
                     beta += m.weights[c] * (gauss ? kGaussianAbsThird : comp.dist.abs_moment(3.0));
                     fourth += m.weights[c] * (gauss ? 3.0 : comp.dist.moment(4));
                   }
                   f.beta = beta;
                   f.fourth_moment = fourth;
                   f.iid = m.components.size() == 1;
                 },
                 [&](const ExchangeableUrn& m) {
                   const double size = static_cast<double>(m.population.size());
                   double third = 0.0;
                   double fourth = 0.0;
                   double second = 0.0;
                   for (double x : m.population) {
                     second += x * x;
                     third += std::abs(x) * x * x;
                     fourth += x * x * x * x;
                   }
                   f.exact_orthonormal = false;
                   f.cross_moment = -1.0 / (size - 1.0);
                   f.beta = third / size;
                   f.fourth_moment = fourth / size;
                   f.cross_fourth = (second * second - fourth) / (size * (size - 1.0));
                   f.exchangeability = Exchangeability::Finite;
                   f.extent = m.population.size();
                 },
             },
             model);
  return f;
}

double definetti_tv_bound(int n, int k) { return sympoly::falling_ratio_complement(n, k); }

}  // namespace conclab::proc
