#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conclab/config.hpp"
#include "conclab/error.hpp"
#include "conclab/report.hpp"

using namespace conclab;
using json = nlohmann::json;

namespace {

json base_concentration() {
  return json::parse(R"({"version": 1, "model": {"variant": "iid_rademacher"}, "n": 50, "k": 5, "seed": 3})");
}

std::string config_error_field(const json& j) {
  try {
    cfg::concentration_from_json(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("model specifications") {
  CHECK(std::holds_alternative<proc::IidGaussian>(cfg::parse_model(json{{"variant", "iid_gaussian"}})));
  const auto scaled = cfg::parse_model(
      json::parse(R"({"variant": "scaled_rademacher", "r": {"atoms": [0.5, 1.3228756555322954], "probs": [0.5, 0.5]}})"));
  CHECK(std::get<proc::ScaledRademacher>(scaled).r.atoms.size() == 2);
  const auto mix = cfg::parse_model(json::parse(
      R"({"variant": "definetti_mixture", "components": [{"kind": "gaussian"}, {"kind": "discrete", "atoms": [-1, 1], "probs": [0.5, 0.5]}]})"));
  CHECK(std::get<proc::DeFinettiMixture>(mix).weights == std::vector<double>{0.5, 0.5});
  const auto urn = cfg::parse_model(json::parse(
      R"({"variant": "exchangeable_urn", "population": {"kind": "rademacher", "size": 10, "seed": 1}})"));
  CHECK(std::get<proc::ExchangeableUrn>(urn).population.size() == 10);

  auto field_of = [](const char* text) {
    try {
      cfg::parse_model(json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"variant": "levy_flight"})") == "model.variant");
  CHECK(field_of(R"({})") == "model.variant");
  CHECK(field_of(R"({"variant": "iid_gaussian", "sigma": 2})") == "model.sigma");
  CHECK(field_of(R"({"variant": "scaled_rademacher", "r": {"atoms": [0.5], "probs": [1.0]}})") == "model");
  CHECK(field_of(R"({"variant": "scaled_rademacher", "r": {"atoms": [1], "probs": []}})") == "model.r.probs");
}

TEST_CASE("concentration config validation names the field") {
  CHECK_NOTHROW(cfg::concentration_from_json(base_concentration()));
  auto j = base_concentration();
  j.erase("model");
  CHECK(config_error_field(j) == "model");
  j = base_concentration();
  j["k"] = 51;
  CHECK(config_error_field(j) == "k");
  j = base_concentration();
  j["k"] = "five";
  CHECK(config_error_field(j) == "k");
  j = base_concentration();
  j["colour"] = "blue";
  CHECK(config_error_field(j) == "colour");
  j = base_concentration();
  j["seed"] = -1;
  CHECK(config_error_field(j) == "seed");
  j = base_concentration();
  j.erase("version");
  CHECK(config_error_field(j) == "version");
  j = base_concentration();
  j["version"] = 2;
  CHECK_THROWS_AS(cfg::concentration_from_json(j), VersionError);
  j = base_concentration();
  j["model"] = json::parse(R"({"variant": "exchangeable_urn", "population": {"kind": "gaussian", "size": 20, "seed": 1}})");
  CHECK(config_error_field(j) == "n");
}

TEST_CASE("other experiment configs") {
  const auto clt = cfg::clt_from_json(json::parse(
      R"({"version": 1, "model": {"variant": "trigonometric"}, "n": 64, "k": 8, "h": 0.25})"));
  CHECK(clt.h == 0.25);
  CHECK(clt.num_tau == 8);
  CHECK_THROWS_AS(cfg::clt_from_json(json::parse(
                      R"({"version": 1, "model": {"variant": "trigonometric"}, "n": 64, "k": 8, "h": 20})")),
                  ConfigError);
  CHECK_THROWS_AS(cfg::exchangeable_from_json(json::parse(
                      R"({"version": 1, "model": {"variant": "iid_gaussian"}, "k": 8})")),
                  ConfigError);
  const auto g = cfg::graph_check_from_json(json{{"version", 1}});
  CHECK(g.n == 6);
  CHECK(g.k == 3);
  CHECK_THROWS_AS(cfg::graph_check_from_json(json{{"version", 1}, {"n", 4}, {"k", 4}}), ConfigError);
  const auto s = cfg::sympoly_check_from_json(json{{"version", 1}, {"n_max", 30}});
  CHECK(s.n_max == 30);
  CHECK(s.trials == 10000);
}

TEST_CASE("config echo round trips") {
  const auto c = cfg::concentration_from_json(base_concentration());
  const auto echo = cfg::to_json(c);
  CHECK(echo.at("experiment") == "concentration");
  CHECK(echo.at("version") == cfg::kConfigVersion);
  CHECK(cfg::to_json(cfg::concentration_from_json(echo)) == echo);

  const auto clt = cfg::clt_from_json(json::parse(
      R"({"version": 1, "model": {"variant": "iid_gaussian"}, "n": 64, "k": 8, "seed": 12345678901234})"));
  CHECK(cfg::to_json(cfg::clt_from_json(cfg::to_json(clt))) == cfg::to_json(clt));
  const cfg::GraphCheckConfig g{};
  CHECK(cfg::to_json(cfg::graph_check_from_json(cfg::to_json(g))) == cfg::to_json(g));
}

TEST_CASE("reports serialize deterministically and round trip") {
  ExperimentReport r;
  r.experiment = "unit";
  r.config = {{"version", 1}, {"seed", 5}};
  r.seed = 5;
  r.results["x"] = 0.1;
  r.check("always", true);
  r.check("never", false, "detail");
  r.curves.push_back({"curve", {"t[1]", "y[1]"}, {{0.1, 1.0 / 3.0}, {2.0, -1e-300}}});
  r.wall_seconds = 1.5;
  CHECK(!r.passed());
  CHECK(r.stem() == "unit_seed5_" + r.config_hash());
  CHECK(r.config_hash().size() == 16);

  const auto j = r.to_json();
  CHECK(j.at("artifact") == kArtifact);
  CHECK(j.at("artifact_version") == kArtifactVersion);
  CHECK(j.at("passed") == false);
  CHECK(!j.contains("wall_seconds"));
  const auto back = ExperimentReport::from_json(j);
  CHECK(back.to_json() == j);

  const auto dir = std::filesystem::temp_directory_path() / "conclab_report_test";
  std::filesystem::remove_all(dir);
  const auto files = write_report(r, dir, Formats::Both);
  CHECK(files.size() == 3);
  const auto csv = slurp(dir / (r.stem() + "_curve.csv"));
  CHECK(csv.find("# artifact=conclab") == 0);
  CHECK(csv.find("t[1],y[1]\n0.10000000000000001,0.33333333333333331\n") != std::string::npos);
  CHECK(std::stod("0.33333333333333331") == 1.0 / 3.0);
  const auto first = slurp(dir / (r.stem() + ".json"));
  write_report(r, dir, Formats::Json);
  CHECK(slurp(dir / (r.stem() + ".json")) == first);
  CHECK(write_report(r, dir / "csv_only", Formats::Csv).size() == 2);
  std::filesystem::remove_all(dir);
}
