#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace conclab {

inline constexpr const char* kArtifact = "conclab";
inline constexpr const char* kArtifactVersion = CONCLAB_VERSION;

/// One table written as its own CSV file. Column names carry their units.
struct Curve {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Contract {
  std::string name;
  bool passed;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::json config;   // full echo, sufficient for reproduce()
  std::uint64_t seed = 0;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Contract> contracts;
  std::vector<Curve> curves;
  double wall_seconds = 0.0;  // kept out of the report bytes

  bool passed() const;
  void check(std::string name, bool ok, std::string detail = {});

  /// Hex FNV-1a of the canonical config dump.
  std::string config_hash() const;
  /// "<experiment>_seed<seed>_<hash>".
  std::string stem() const;

  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
};

enum class Formats { Csv, Json, Both };

/// Writes <stem>.json, one <stem>_<curve>.csv per curve, and
/// <stem>.timing.json. Returns the paths written.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir, Formats formats);

/// %.17g formatting shared by every CSV writer.
std::string format_real(double x);

}  // namespace conclab
