#include "conclab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "conclab/error.hpp"
#include "conclab/rng.hpp"

namespace conclab {

bool ExperimentReport::passed() const {
  for (const auto& c : contracts) {
    if (!c.passed) return false;
  }
  return true;
}

void ExperimentReport::check(std::string name, bool ok, std::string detail) {
  contracts.push_back({std::move(name), ok, std::move(detail)});
}

std::string ExperimentReport::config_hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

std::string ExperimentReport::stem() const {
  return experiment + "_seed" + std::to_string(seed) + "_" + config_hash();
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json contracts_json = nlohmann::json::array();
  for (const auto& c : contracts) {
    contracts_json.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  nlohmann::json curves_json = nlohmann::json::array();
  for (const auto& c : curves) {
    curves_json.push_back({{"name", c.name}, {"columns", c.columns}, {"rows", c.rows}});
  }
  return {{"artifact", kArtifact},
          {"artifact_version", kArtifactVersion},
          {"config_version", config.value("version", 0)},
          {"experiment", experiment},
          {"seed", seed},
          {"config", config},
          {"config_hash", config_hash()},
          {"results", results},
          {"contracts", contracts_json},
          {"curves", curves_json},
          {"passed", passed()}};
}

ExperimentReport ExperimentReport::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("artifact", "") != kArtifact) {
    throw VersionError("not a conclab report");
  }
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.results = j.at("results");
  for (const auto& c : j.at("contracts")) {
    r.contracts.push_back({c.at("name"), c.at("passed"), c.at("detail")});
  }
  for (const auto& c : j.at("curves")) {
    r.curves.push_back({c.at("name"), c.at("columns"), c.at("rows")});
  }
  return r;
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir, Formats formats) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto stem = report.stem();
  auto open = [&](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    written.push_back(p);
    return out;
  };

  if (formats != Formats::Csv) {
    auto out = open(dir / (stem + ".json"));
    out << report.to_json().dump(2) << '\n';
  }
  if (formats != Formats::Json) {
    for (const auto& curve : report.curves) {
      auto out = open(dir / (stem + "_" + curve.name + ".csv"));
      out << "# artifact=" << kArtifact << " artifact_version=" << kArtifactVersion
          << " experiment=" << report.experiment << " seed=" << report.seed
          << " config_hash=" << report.config_hash() << '\n';
      out << "# config=" << report.config.dump() << '\n';
      for (std::size_t c = 0; c < curve.columns.size(); ++c) out << (c ? "," : "") << curve.columns[c];
      out << '\n';
      for (const auto& row : curve.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
        out << '\n';
      }
    }
  }
  {
    auto out = open(dir / (stem + ".timing.json"));
    out << nlohmann::json{{"wall_seconds", report.wall_seconds}}.dump() << '\n';
  }
  return written;
}

}  // namespace conclab
