#pragma once

// Experiment configurations and their JSON form. Every loader reports bad
// input as ConfigError naming the offending field.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "conclab/processes.hpp"
#include "conclab/slice_graph.hpp"

namespace conclab::cfg {

using nlohmann::json;

inline constexpr int kConfigVersion = 1;

/// Model from its JSON description, e.g. {"variant": "iid_rademacher"} or
/// {"variant": "exchangeable_urn", "population": {"kind": "exponential",
/// "size": 10000, "seed": 1}}.
proc::SequenceModel parse_model(const json& spec, const std::string& field = "model");

struct ConcentrationConfig {
  json model_spec;
  proc::SequenceModel model;
  int n = 0;
  int k = 0;
  std::size_t num_tau = 200;
  std::size_t num_omega = 1000;
  std::vector<double> delta_grid{0.005, 0.01, 0.02, 0.05, 0.1, 0.2};
  std::uint64_t seed = 0;
};

struct CltConfig {
  json model_spec;
  proc::SequenceModel model;
  int n = 0;
  int k = 0;
  std::size_t num_omega = 1000;
  std::size_t num_tau = 8;  // index sets pooled into F
  double h = 0.5;           // proof-grid step: t_r = r h^2
  double t_min = 1e-3;
  double t_max = 50.0;
  int log_points = 24;
  std::uint64_t seed = 0;
};

struct ExchangeableConfig {
  json model_spec;
  proc::SequenceModel model;
  int k = 0;
  std::size_t num_samples = 100000;
  std::size_t extension = 1000;  // n(X) stand-in for infinite exchangeable models
  std::uint64_t seed = 0;
};

struct GraphCheckConfig {
  int n = 6;
  int k = 3;
  std::size_t fns = 1000;
  std::uint64_t seed = 0;
  std::uint64_t budget = slice::SliceGraph::kDefaultBudget;
  std::uint64_t eigen_budget = slice::SliceGraph::kDefaultEigenBudget;
};

struct SympolyCheckConfig {
  int n_max = 200;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

/// Each loader requires {"version": 1}; a different version throws
/// VersionError, anything else malformed throws ConfigError.
ConcentrationConfig concentration_from_json(const json& j);
CltConfig clt_from_json(const json& j);
ExchangeableConfig exchangeable_from_json(const json& j);
GraphCheckConfig graph_check_from_json(const json& j);
SympolyCheckConfig sympoly_check_from_json(const json& j);

json to_json(const ConcentrationConfig& c);
json to_json(const CltConfig& c);
json to_json(const ExchangeableConfig& c);
json to_json(const GraphCheckConfig& c);
json to_json(const SympolyCheckConfig& c);

/// Throws VersionError unless j["version"] == kConfigVersion.
void require_version(const json& j);

}  // namespace conclab::cfg
