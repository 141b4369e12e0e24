#include "conclab/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>

#include "conclab/error.hpp"

namespace conclab::cfg {

namespace {

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected a JSON object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return it.key() == k; })) {
      throw ConfigError(prefix + it.key(), "unknown field");
    }
  }
}

const json& required(const json& j, const std::string& key, const std::string& prefix = "") {
  if (!j.contains(key)) throw ConfigError(prefix + key, "missing required field");
  return j.at(key);
}

std::int64_t as_int(const json& v, const std::string& field, std::int64_t lo,
                    std::int64_t hi = std::numeric_limits<std::int64_t>::max()) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  const auto x = v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)
                     ? hi + 1
                     : v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw ConfigError(field, "value " + v.dump() + " outside [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
  }
  return x;
}

std::uint64_t as_seed(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected a nonnegative integer");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto x = v.get<std::int64_t>();
  if (x < 0) throw ConfigError(field, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "expected a finite number");
  return x;
}

std::vector<double> as_reals(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw ConfigError(field, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

proc::DiscreteDist as_discrete(const json& v, const std::string& field) {
  require_object(v, field);
  reject_unknown(v, {"atoms", "probs", "kind"}, field + ".");
  auto atoms = as_reals(required(v, "atoms", field + "."), field + ".atoms");
  auto probs = as_reals(required(v, "probs", field + "."), field + ".probs");
  try {
    return proc::DiscreteDist::make(std::move(atoms), std::move(probs));
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
}

template <class T>
T optional_or(const json& j, const char* key, T fallback, auto convert) {
  return j.contains(key) ? convert(j.at(key), std::string(key)) : fallback;
}

}  // namespace

void require_version(const json& j) {
  require_object(j, "config");
  const json& v = required(j, "version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != kConfigVersion) {
    throw VersionError("config version " + v.dump() + " is not supported (expected " +
                       std::to_string(kConfigVersion) + ")");
  }
}

proc::SequenceModel parse_model(const json& spec, const std::string& field) {
  require_object(spec, field);
  const json& variant_json = required(spec, "variant", field + ".");
  if (!variant_json.is_string()) throw ConfigError(field + ".variant", "expected a string");
  const auto variant = variant_json.get<std::string>();

  proc::SequenceModel model;
  if (variant == "iid_rademacher" || variant == "iid_gaussian" || variant == "trigonometric") {
    reject_unknown(spec, {"variant"}, field + ".");
    if (variant == "iid_rademacher") model = proc::IidRademacher{};
    if (variant == "iid_gaussian") model = proc::IidGaussian{};
    if (variant == "trigonometric") model = proc::Trigonometric{};
  } else if (variant == "scaled_rademacher") {
    reject_unknown(spec, {"variant", "r"}, field + ".");
    model = proc::ScaledRademacher{as_discrete(required(spec, "r", field + "."), field + ".r")};
  } else if (variant == "definetti_mixture") {
    reject_unknown(spec, {"variant", "components", "weights"}, field + ".");
    const json& comps = required(spec, "components", field + ".");
    if (!comps.is_array() || comps.empty()) {
      throw ConfigError(field + ".components", "expected a nonempty array");
    }
    proc::DeFinettiMixture m;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::string cf = field + ".components[" + std::to_string(c) + "]";
      require_object(comps[c], cf);
      const json& kind = required(comps[c], "kind", cf + ".");
      if (kind == "gaussian") {
        reject_unknown(comps[c], {"kind"}, cf + ".");
        m.components.push_back({proc::MixtureComponent::Kind::Gaussian, {}});
      } else if (kind == "discrete") {
        m.components.push_back({proc::MixtureComponent::Kind::Discrete, as_discrete(comps[c], cf)});
      } else {
        throw ConfigError(cf + ".kind", "expected \"gaussian\" or \"discrete\"");
      }
    }
    m.weights = spec.contains("weights")
                    ? as_reals(spec.at("weights"), field + ".weights")
                    : std::vector<double>(m.components.size(), 1.0 / static_cast<double>(m.components.size()));
    model = std::move(m);
  } else if (variant == "exchangeable_urn") {
    reject_unknown(spec, {"variant", "population"}, field + ".");
    const json& pop = required(spec, "population", field + ".");
    const std::string pf = field + ".population";
    if (pop.is_array()) {
      model = proc::ExchangeableUrn{as_reals(pop, pf)};
    } else {
      require_object(pop, pf);
      reject_unknown(pop, {"kind", "size", "seed"}, pf + ".");
      const json& kind = required(pop, "kind", pf + ".");
      if (!kind.is_string()) throw ConfigError(pf + ".kind", "expected a string");
      const auto size = as_int(required(pop, "size", pf + "."), pf + ".size", 2, 100'000'000);
      const auto seed = pop.contains("seed") ? as_seed(pop.at("seed"), pf + ".seed") : 0;
      try {
        model = proc::ExchangeableUrn{
            proc::urn_population(kind.get<std::string>(), static_cast<std::size_t>(size), seed)};
      } catch (const DomainError& e) {
        throw ConfigError(pf + ".kind", e.what());
      }
    }
  } else {
    throw ConfigError(field + ".variant", "unknown model variant '" + variant + "'");
  }

  try {
    proc::validate(model);
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
  return model;
}

namespace {

void check_urn_length(const proc::SequenceModel& model, int n, const char* field) {
  if (const auto* urn = std::get_if<proc::ExchangeableUrn>(&model)) {
    if (static_cast<std::size_t>(n) > urn->population.size()) {
      throw ConfigError(field, "exceeds the urn population size " + std::to_string(urn->population.size()));
    }
  }
}

auto int_in(std::int64_t lo, std::int64_t hi = std::numeric_limits<int>::max()) {
  return [lo, hi](const json& v, const std::string& f) { return as_int(v, f, lo, hi); };
}

}  // namespace

ConcentrationConfig concentration_from_json(const json& j) {
  require_version(j);
  reject_unknown(j, {"version", "experiment", "model", "n", "k", "num_tau", "num_omega", "delta_grid", "seed"});
  ConcentrationConfig c;
  c.model_spec = required(j, "model");
  c.model = parse_model(c.model_spec);
  c.n = static_cast<int>(as_int(required(j, "n"), "n", 1, std::numeric_limits<int>::max()));
  c.k = static_cast<int>(as_int(required(j, "k"), "k", 1, c.n));
  c.num_tau = static_cast<std::size_t>(optional_or<std::int64_t>(j, "num_tau", 200, int_in(1)));
  c.num_omega = static_cast<std::size_t>(optional_or<std::int64_t>(j, "num_omega", 1000, int_in(1)));
  if (j.contains("delta_grid")) c.delta_grid = as_reals(j.at("delta_grid"), "delta_grid");
  for (std::size_t i = 0; i < c.delta_grid.size(); ++i) {
    if (!(c.delta_grid[i] > 0.0 && c.delta_grid[i] <= 1.0) || (i > 0 && !(c.delta_grid[i] > c.delta_grid[i - 1]))) {
      throw ConfigError("delta_grid", "must be increasing values in (0, 1]");
    }
  }
  c.seed = j.contains("seed") ? as_seed(j.at("seed"), "seed") : 0;
  check_urn_length(c.model, c.n, "n");
  return c;
}

CltConfig clt_from_json(const json& j) {
  require_version(j);
  reject_unknown(j, {"version", "experiment", "model", "n", "k", "num_omega", "num_tau", "h", "t_min",
                     "t_max", "log_points", "seed"});
  CltConfig c;
  c.model_spec = required(j, "model");
  c.model = parse_model(c.model_spec);
  c.n = static_cast<int>(as_int(required(j, "n"), "n", 2, std::numeric_limits<int>::max()));
  c.k = static_cast<int>(as_int(required(j, "k"), "k", 1, c.n));
  c.num_omega = static_cast<std::size_t>(optional_or<std::int64_t>(j, "num_omega", 1000, int_in(1)));
  c.num_tau = static_cast<std::size_t>(optional_or<std::int64_t>(j, "num_tau", 8, int_in(1)));
  c.h = optional_or<double>(j, "h", 0.5, as_real);
  if (!(c.h >= 0.05 && c.h <= 10.0)) throw ConfigError("h", "must lie in [0.05, 10]");
  c.t_min = optional_or<double>(j, "t_min", 1e-3, as_real);
  c.t_max = optional_or<double>(j, "t_max", 50.0, as_real);
  c.log_points = static_cast<int>(optional_or<std::int64_t>(j, "log_points", 24, int_in(0, 100000)));
  if (c.log_points > 0 && !(c.t_min > 0.0 && c.t_max >= c.t_min)) {
    throw ConfigError("t_min", "log grid needs 0 < t_min <= t_max");
  }
  c.seed = j.contains("seed") ? as_seed(j.at("seed"), "seed") : 0;
  check_urn_length(c.model, c.n, "n");
  return c;
}

ExchangeableConfig exchangeable_from_json(const json& j) {
  require_version(j);
  reject_unknown(j, {"version", "experiment", "model", "k", "num_samples", "extension", "seed"});
  ExchangeableConfig c;
  c.model_spec = required(j, "model");
  c.model = parse_model(c.model_spec);
  if (!std::holds_alternative<proc::ExchangeableUrn>(c.model) &&
      !std::holds_alternative<proc::DeFinettiMixture>(c.model)) {
    throw ConfigError("model.variant", "exchangeable runs need exchangeable_urn or definetti_mixture");
  }
  c.k = static_cast<int>(as_int(required(j, "k"), "k", 1));
  c.num_samples = static_cast<std::size_t>(optional_or<std::int64_t>(j, "num_samples", 100000, int_in(1)));
  c.extension = static_cast<std::size_t>(optional_or<std::int64_t>(j, "extension", 1000, int_in(1)));
  c.seed = j.contains("seed") ? as_seed(j.at("seed"), "seed") : 0;
  check_urn_length(c.model, c.k, "k");
  if (!std::holds_alternative<proc::ExchangeableUrn>(c.model) && c.extension < static_cast<std::size_t>(c.k)) {
    throw ConfigError("extension", "must be at least k");
  }
  return c;
}

GraphCheckConfig graph_check_from_json(const json& j) {
  require_version(j);
  reject_unknown(j, {"version", "experiment", "n", "k", "fns", "seed", "budget", "eigen_budget"});
  GraphCheckConfig c;
  c.n = static_cast<int>(optional_or<std::int64_t>(j, "n", c.n, int_in(2, 1 << 20)));
  c.k = static_cast<int>(optional_or<std::int64_t>(j, "k", c.k, int_in(1, c.n - 1)));
  c.fns = static_cast<std::size_t>(optional_or<std::int64_t>(j, "fns", 1000, int_in(1)));
  c.seed = j.contains("seed") ? as_seed(j.at("seed"), "seed") : 0;
  if (j.contains("budget")) c.budget = as_seed(j.at("budget"), "budget");
  if (j.contains("eigen_budget")) c.eigen_budget = as_seed(j.at("eigen_budget"), "eigen_budget");
  return c;
}

SympolyCheckConfig sympoly_check_from_json(const json& j) {
  require_version(j);
  reject_unknown(j, {"version", "experiment", "n_max", "trials", "seed"});
  SympolyCheckConfig c;
  c.n_max = static_cast<int>(optional_or<std::int64_t>(j, "n_max", 200, int_in(2, 5000)));
  c.trials = static_cast<std::size_t>(optional_or<std::int64_t>(j, "trials", 10000, int_in(1)));
  c.seed = j.contains("seed") ? as_seed(j.at("seed"), "seed") : 0;
  return c;
}

json to_json(const ConcentrationConfig& c) {
  return {{"version", kConfigVersion}, {"experiment", "concentration"}, {"model", c.model_spec},
          {"n", c.n}, {"k", c.k}, {"num_tau", c.num_tau}, {"num_omega", c.num_omega},
          {"delta_grid", c.delta_grid}, {"seed", c.seed}};
}

json to_json(const CltConfig& c) {
  return {{"version", kConfigVersion}, {"experiment", "clt"}, {"model", c.model_spec},
          {"n", c.n}, {"k", c.k}, {"num_omega", c.num_omega}, {"num_tau", c.num_tau},
          {"h", c.h}, {"t_min", c.t_min}, {"t_max", c.t_max}, {"log_points", c.log_points},
          {"seed", c.seed}};
}

json to_json(const ExchangeableConfig& c) {
  return {{"version", kConfigVersion}, {"experiment", "exchangeable"}, {"model", c.model_spec},
          {"k", c.k}, {"num_samples", c.num_samples}, {"extension", c.extension}, {"seed", c.seed}};
}

json to_json(const GraphCheckConfig& c) {
  return {{"version", kConfigVersion}, {"experiment", "graph-check"}, {"n", c.n}, {"k", c.k},
          {"fns", c.fns}, {"seed", c.seed}, {"budget", c.budget}, {"eigen_budget", c.eigen_budget}};
}

json to_json(const SympolyCheckConfig& c) {
  return {{"version", kConfigVersion}, {"experiment", "sympoly-check"}, {"n_max", c.n_max},
          {"trials", c.trials}, {"seed", c.seed}};
}

}  // namespace conclab::cfg
