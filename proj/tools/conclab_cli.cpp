// conclab: command-line driver for the verification suites and experiments.
//
// Exit status: 0 when every asserted contract passed, 1 when one failed,
// 2 on configuration, version or budget errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "conclab/config.hpp"
#include "conclab/dist_metrics.hpp"
#include "conclab/error.hpp"
#include "conclab/experiments.hpp"
#include "conclab/report.hpp"
#include "conclab/suites.hpp"

namespace {

using nlohmann::json;
using namespace conclab;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<int> k;
  int workers = 1;
  std::string out_dir = ".";
  std::string format = "both";
};

void add_common(CLI::App* sub, Common& c, bool with_nk) {
  sub->add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "Master seed (overrides the config)");
  if (with_nk) {
    sub->add_option("--n", c.n, "Sequence length or slice size n");
    sub->add_option("--k", c.k, "Subset size k");
  }
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1, 1024));
  sub->add_option("--out-dir", c.out_dir, "Directory for report files");
  sub->add_option("--format", c.format, "Output formats")->check(CLI::IsMember({"csv", "json", "both"}));
}

json load_config(const Common& c) {
  json j = json::object();
  if (!c.config.empty()) {
    std::ifstream in(c.config);
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  } else {
    j["version"] = cfg::kConfigVersion;
  }
  if (c.seed) j["seed"] = *c.seed;
  if (c.n) j["n"] = *c.n;
  if (c.k) j["k"] = *c.k;
  return j;
}

Formats parse_formats(const std::string& f) {
  if (f == "csv") return Formats::Csv;
  if (f == "json") return Formats::Json;
  return Formats::Both;
}

std::optional<std::uint64_t> env_budget() {
  const char* raw = std::getenv("CONCLAB_BUDGET");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw ConfigError("CONCLAB_BUDGET", "must be a positive integer");
  return v;
}

int finish(const ExperimentReport& r, const Common& c) {
  const auto files = write_report(r, c.out_dir, parse_formats(c.format));
  std::cout << r.experiment << " seed=" << r.seed << " config_hash=" << r.config_hash() << '\n';
  for (const auto& contract : r.contracts) {
    std::cout << (contract.passed ? "  [ok]   " : "  [FAIL] ") << contract.name;
    if (!contract.detail.empty()) std::cout << ": " << contract.detail;
    std::cout << '\n';
  }
  std::cout << r.results.dump(2) << '\n';
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
  return r.passed() ? 0 : 1;
}

int run_levy(const std::string& a, const std::string& b) {
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open");
    return dist::read_csv(in);
  };
  const auto f = read(a);
  const auto g = read(b);
  json out{{"levy", dist::levy_distance(f, g)}, {"kolmogorov", dist::kolmogorov_distance(f, g)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conclab: numerical checks of concentration for subsequence sums"};
  app.set_version_flag("--version", std::string(kArtifactVersion));
  app.require_subcommand(1);

  Common common;
  auto* graph = app.add_subcommand("graph-check", "Functional inequalities on the slice G(n,k)");
  add_common(graph, common, true);
  std::optional<std::size_t> fns;
  graph->add_option("--fns", fns, "Random functions per check");

  auto* sym = app.add_subcommand("sympoly-check", "Symmetric-polynomial oracle, sweep and identities");
  add_common(sym, common, false);
  std::optional<int> n_max;
  std::optional<std::size_t> trials;
  sym->add_option("--n-max", n_max, "Largest sequence length in the sweep");
  sym->add_option("--trials", trials, "Sweep inputs");

  auto* conc = app.add_subcommand("concentration", "Levy distance of F_tau to the pooled F");
  add_common(conc, common, true);
  auto* clt = app.add_subcommand("clt", "Characteristic-function comparison against the mixed normal");
  add_common(clt, common, true);
  auto* exch = app.add_subcommand("exchangeable", "Normal approximation for exchangeable sequences");
  add_common(exch, common, true);

  auto* levy = app.add_subcommand("levy", "Levy and Kolmogorov distance between two step-cdf CSV files");
  std::string levy_a;
  std::string levy_b;
  levy->add_option("first", levy_a, "CSV with header jump,cum")->required()->check(CLI::ExistingFile);
  levy->add_option("second", levy_b, "CSV with header jump,cum")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const exp::RunOptions opt{common.workers};
    if (*levy) return run_levy(levy_a, levy_b);
    json j = load_config(common);
    if (*graph) {
      if (fns) j["fns"] = *fns;
      if (const auto b = env_budget()) j["budget"] = *b;
      return finish(exp::run_graph_check(cfg::graph_check_from_json(j)), common);
    }
    if (*sym) {
      if (n_max) j["n_max"] = *n_max;
      if (trials) j["trials"] = *trials;
      return finish(exp::run_sympoly_check(cfg::sympoly_check_from_json(j)), common);
    }
    if (*conc) return finish(exp::run_concentration(cfg::concentration_from_json(j), opt), common);
    if (*clt) return finish(exp::run_clt(cfg::clt_from_json(j), opt), common);
    if (*exch) return finish(exp::run_exchangeable(cfg::exchangeable_from_json(j), opt), common);
  } catch (const ConfigError& e) {
    std::cerr << "conclab: config error: " << e.what() << '\n';
    return 2;
  } catch (const VersionError& e) {
    std::cerr << "conclab: version error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "conclab: budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "conclab: error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
