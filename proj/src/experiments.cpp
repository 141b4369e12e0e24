#include "conclab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "conclab/dist_metrics.hpp"
#include "conclab/error.hpp"
#include "conclab/kernels.hpp"
#include "conclab/slice_graph.hpp"
#include "conclab/suites.hpp"

namespace conclab::exp {

using nlohmann::json;
using cplx = std::complex<double>;

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

namespace {

constexpr double kQuantileLevels[] = {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 1.0};

json quantile_table(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  json q = json::object();
  for (double p : kQuantileLevels) {
    char key[16];
    std::snprintf(key, sizeof key, "q%.2f", p);
    q[key] = quantile_sorted(values, p);
  }
  return q;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json facts_json(const proc::ModelFacts& f) {
  json j{{"model", f.model},
         {"exact_orthonormal", f.exact_orthonormal},
         {"cross_moment", f.cross_moment},
         {"iid", f.iid},
         {"fourth_moment", f.fourth_moment},
         {"cross_fourth_moment", f.cross_fourth},
         {"limit_r", {{"atoms", f.limit_r.atoms}, {"probs", f.limit_r.probs}}}};
  if (f.beta) j["beta"] = *f.beta;
  j["exchangeability"] = f.exchangeability == proc::Exchangeability::None       ? "none"
                         : f.exchangeability == proc::Exchangeability::Infinite ? "infinite"
                                                                                : "finite";
  if (f.extent) j["extent"] = *f.extent;
  return j;
}

}  // namespace

ExperimentReport run_concentration(const cfg::ConcentrationConfig& c, const RunOptions& opt) {
  Stopwatch clock;
  ExperimentReport r;
  r.experiment = "concentration";
  r.config = cfg::to_json(c);
  r.seed = c.seed;

  const auto taus = kernels::draw_taus(c.n, c.k, c.num_tau, c.seed);
  std::vector<double> sums;
  std::vector<double> levy;
  if (opt.workers <= 1) {
    kernels::serial::concentration_sums(c.model, static_cast<std::size_t>(c.n), taus, c.num_omega, c.seed, sums);
  } else {
    kernels::omp::concentration_sums(c.model, static_cast<std::size_t>(c.n), taus, c.num_omega, c.seed, sums,
                                     opt.workers);
  }
  // Every F_tau has num_omega samples, so the pooled empirical cdf is the
  // equal-weight average of the F_tau.
  const auto pooled = dist::empirical_cdf(sums);
  if (opt.workers <= 1) {
    kernels::serial::levy_rows(sums, c.num_tau, c.num_omega, pooled, levy);
  } else {
    kernels::omp::levy_rows(sums, c.num_tau, c.num_omega, pooled, levy, opt.workers);
  }

  std::vector<double> sorted = levy;
  std::sort(sorted.begin(), sorted.end());
  r.results["levy_quantiles"] = quantile_table(levy);
  r.results["levy_median"] = quantile_sorted(sorted, 0.5);
  r.results["levy_mean"] = std::accumulate(levy.begin(), levy.end(), 0.0) / static_cast<double>(levy.size());
  r.results["pooled_atoms"] = pooled.size();
  r.results["dkw_tolerance"] = dist::dkw_tolerance(c.num_omega);
  r.results["model_facts"] = facts_json(proc::model_facts(c.model));

  Curve levy_curve{"levy", {"tau_index[1]", "levy_distance[1]"}, {}};
  for (std::size_t j = 0; j < levy.size(); ++j) levy_curve.rows.push_back({static_cast<double>(j), levy[j]});

  Curve tail{"exceedance", {"delta[1]", "exceedance_fraction[prob]", "bound_shape[1]"}, {}};
  json exceed = json::array();
  bool monotone = true;
  double prev = 1.0;
  for (double d : c.delta_grid) {
    const auto hits = std::count_if(levy.begin(), levy.end(), [d](double x) { return x >= d; });
    const double frac = static_cast<double>(hits) / static_cast<double>(levy.size());
    const double shape = std::pow(static_cast<double>(c.k), 0.75) * std::exp(-c.k * std::pow(d, 8));
    monotone = monotone && frac <= prev;
    prev = frac;
    exceed.push_back({{"delta", d}, {"fraction", frac}, {"bound_shape", shape}});
    tail.rows.push_back({d, frac, shape});
  }
  r.results["exceedance"] = exceed;
  r.curves = {std::move(levy_curve), std::move(tail)};

  r.check("levy_in_unit_interval", sorted.front() >= 0.0 && sorted.back() <= 1.0);
  r.check("exceedance_nonincreasing", monotone);
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_clt(const cfg::CltConfig& c, const RunOptions& opt) {
  Stopwatch clock;
  const auto facts = proc::model_facts(c.model);
  if (!facts.mean_zero || !facts.beta) {
    throw PreconditionError("run_clt needs a mean-zero model with a third-moment bound");
  }
  ExperimentReport r;
  r.experiment = "clt";
  r.config = cfg::to_json(c);
  r.seed = c.seed;

  const auto ts = dist::proof_grid(c.h, c.t_min, c.t_max, c.log_points);
  const auto taus = kernels::draw_taus(c.n, c.k, c.num_tau, c.seed);
  kernels::CltOutputs out;
  if (opt.workers <= 1) {
    kernels::serial::clt_paths(c.model, static_cast<std::size_t>(c.n), c.k, ts, taus, c.num_omega, c.seed, out);
  } else {
    kernels::omp::clt_paths(c.model, static_cast<std::size_t>(c.n), c.k, ts, taus, c.num_omega, c.seed, out,
                            opt.workers);
  }

  const double n = c.n;
  const double k = c.k;
  const double paths = static_cast<double>(c.num_omega);
  const double root_k = std::sqrt(k);
  const double gap_bound = 6.0 * (k - 1.0) / (n - 1.0);

  // Per-path checks, then averages reduced in path order.
  std::size_t gap_violations = 0;
  double gap_max = 0.0;
  std::size_t classical_violations = 0;
  double classical_ratio_max = 0.0;
  std::vector<cplx> f(ts.size()), g(ts.size()), h(ts.size());
  for (std::size_t i = 0; i < out.paths; ++i) {
    const auto& st = out.stats[i];
    const double sigma = std::sqrt(st.variance);
    const double classical = sigma > 0.0 ? 18.0 * st.beta / (sigma * sigma * sigma * root_k) : 0.0;
    for (std::size_t p = 0; p < ts.size(); ++p) {
      const std::size_t at = i * out.points + p;
      const double gap = std::abs(out.f[at] - out.g[at]);
      gap_max = std::max(gap_max, gap);
      if (gap > gap_bound) ++gap_violations;
      if (sigma > 0.0) {
        const double lhs = std::abs(out.g[at] - out.h[at]) / ts[p];
        classical_ratio_max = std::max(classical_ratio_max, lhs / classical);
        if (lhs > classical) ++classical_violations;
      }
      f[p] += out.f[at];
      g[p] += out.g[at];
      h[p] += out.h[at];
    }
  }
  double fg_max = 0.0;
  double fh_max = 0.0;
  double f_abs_max = 0.0;
  Curve chars{"characteristic", {"t[1]", "abs_f_minus_g[1]", "abs_f_minus_h_over_t[1]", "abs_f[1]"}, {}};
  for (std::size_t p = 0; p < ts.size(); ++p) {
    f[p] /= paths;
    g[p] /= paths;
    h[p] /= paths;
    const double fg = std::abs(f[p] - g[p]);
    const double fh = std::abs(f[p] - h[p]) / ts[p];
    fg_max = std::max(fg_max, fg);
    fh_max = std::max(fh_max, fh);
    f_abs_max = std::max(f_abs_max, std::abs(f[p]));
    chars.rows.push_back({ts[p], fg, fh, std::abs(f[p])});
  }

  const double beta = *facts.beta;
  const double dkw = dist::dkw_tolerance(c.num_omega);
  const double char_bound = 3.0 * std::sqrt(k / n) + 6.0 * std::pow(beta, 0.25) / std::pow(k, 0.125);

  // Pooled S_tau against Phi_R.
  const auto pooled = dist::empirical_cdf(out.sums);
  const auto& r_law = facts.limit_r;
  const std::function<double(double)> phi_r = [&r_law](double x) {
    return dist::mixture_normal_cdf(r_law.atoms, r_law.probs, x);
  };
  const double levy_pooled = dist::levy_distance(pooled, phi_r);
  std::vector<double> per_tau(out.taus);
  std::vector<double> column(out.paths);
  for (std::size_t j = 0; j < out.taus; ++j) {
    for (std::size_t i = 0; i < out.paths; ++i) column[i] = out.sums[i * out.taus + j];
    per_tau[j] = dist::levy_distance(dist::empirical_cdf(column), phi_r);
  }

  r.results["grid_points"] = ts.size();
  r.results["per_omega_sigma_gap"] = {{"max_gap", gap_max}, {"bound", gap_bound}, {"violations", gap_violations}};
  r.results["mean_gap_f_g"] = {{"max", fg_max}, {"bound", 6.0 * k / n}};
  r.results["char_gap_sup"] = {{"sup_over_grid", fh_max}, {"bound", char_bound}, {"tolerance", 2.0 * dkw}, {"beta", beta}};
  r.results["classical_estimate"] = {{"max_ratio", classical_ratio_max}, {"violations", classical_violations},
                                     {"asserted", facts.iid}};
  r.results["levy_pooled_to_phi_r"] = levy_pooled;
  r.results["kolmogorov_pooled_to_phi_r"] = dist::kolmogorov_distance(pooled, phi_r);
  r.results["levy_per_tau_quantiles"] = quantile_table(per_tau);
  r.results["max_abs_f"] = f_abs_max;
  r.results["model_facts"] = facts_json(facts);
  r.curves = {std::move(chars)};

  r.check("per_omega_sigma_gap", gap_violations == 0,
          "max |f_w - g_w| = " + format_real(gap_max) + " vs " + format_real(gap_bound));
  r.check("mean_gap_f_g", fg_max <= 6.0 * k / n);
  r.check("char_gap_sup", fh_max <= char_bound + 2.0 * dkw,
          format_real(fh_max) + " vs " + format_real(char_bound) + " + " + format_real(2.0 * dkw));
  r.check("f_modulus", f_abs_max <= 1.0 + 3.0 / std::sqrt(paths));
  r.check("levy_in_unit_interval", levy_pooled >= 0.0 && levy_pooled <= 1.0);
  if (facts.iid) r.check("classical_estimate", classical_violations == 0);
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport run_exchangeable(const cfg::ExchangeableConfig& c, const RunOptions& opt) {
  Stopwatch clock;
  const auto facts = proc::model_facts(c.model);
  if (facts.exchangeability == proc::Exchangeability::None) {
    throw PreconditionError("run_exchangeable needs an exchangeable model");
  }
  if (facts.extent && static_cast<std::size_t>(c.k) > *facts.extent) {
    throw DomainError("k exceeds the exchangeability extent n(X)");
  }
  ExperimentReport r;
  r.experiment = "exchangeable";
  r.config = cfg::to_json(c);
  r.seed = c.seed;

  kernels::ExchangeDraws draws;
  if (opt.workers <= 1) {
    kernels::serial::exchangeable_draws(c.model, c.k, c.extension, c.num_samples, c.seed, draws);
  } else {
    kernels::omp::exchangeable_draws(c.model, c.k, c.extension, c.num_samples, c.seed, draws, opt.workers);
  }

  const double k = c.k;
  const double dkw = dist::dkw_tolerance(c.num_samples);
  const std::function<double(double)> phi = dist::normal_cdf;
  const auto f_emp = dist::empirical_cdf(draws.s);
  const double ks = dist::kolmogorov_distance(f_emp, phi);

  // k / n(X) is 0 for infinitely exchangeable models.
  const double ratio = facts.extent ? k / static_cast<double>(*facts.extent) : 0.0;
  const double ex4 = facts.fourth_moment;
  const double shape = std::pow(ratio, 0.25) + std::pow(ex4, 1.0 / 6.0) / std::pow(k, 1.0 / 16.0);
  const double piece1 = std::sqrt(6.0) * std::pow(ratio, 0.25);
  const double piece2 = std::sqrt(12.0) * std::pow(ex4, 0.125) / std::pow(k, 1.0 / 16.0);

  std::vector<double> xi(draws.s.size());
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = draws.zeta[i] + draws.eta[i];
  const auto smooth = dist::smoothing_check(draws.zeta, draws.eta);
  const double levy_h_phi = dist::levy_distance(dist::empirical_cdf(xi), phi);
  const double levy_f_phi = dist::levy_distance(f_emp, phi);
  const double tv = facts.extent ? proc::definetti_tv_bound(static_cast<int>(*facts.extent), c.k) : 0.0;

  r.results["kolmogorov_to_phi"] = ks;
  r.results["levy_to_phi"] = levy_f_phi;
  r.results["dkw_tolerance"] = dkw;
  r.results["shape"] = shape;
  r.results["levy_pieces"] = {{"ratio_term", piece1}, {"moment_term", piece2}, {"sum", piece1 + piece2}};
  r.results["smoothing"] = {{"levy_h_zeta", smooth.levy}, {"bound", smooth.bound}, {"levy_h_phi", levy_h_phi}};
  r.results["definetti_tv_bound"] = tv;
  r.results["model_facts"] = facts_json(facts);

  Curve cdf{"cdf", {"x[1]", "empirical_cdf[prob]", "normal_cdf[prob]"}, {}};
  for (int i = -40; i <= 40; ++i) {
    const double x = i / 10.0;
    cdf.rows.push_back({x, f_emp(x), dist::normal_cdf(x)});
  }
  r.curves = {std::move(cdf)};

  r.check("distances_in_unit_interval", ks >= 0.0 && ks <= 1.0 && levy_f_phi <= 1.0);
  r.check("smoothing", smooth.levy <= smooth.bound + 2.0 * dkw,
          format_real(smooth.levy) + " vs " + format_real(smooth.bound) + " + " + format_real(2.0 * dkw));
  if (const auto* mix = std::get_if<proc::DeFinettiMixture>(&c.model)) {
    if (mix->components.size() == 1 && mix->components[0].kind == proc::MixtureComponent::Kind::Gaussian) {
      r.check("exact_normality", ks <= dkw, format_real(ks) + " vs " + format_real(dkw));
    }
  }
  r.wall_seconds = clock.seconds();
  return r;
}

FiniteOmegaModel::FiniteOmegaModel(std::string name, int n, std::vector<double> probs, std::vector<double> values)
    : name_(std::move(name)), n_(n), probs_(std::move(probs)), values_(std::move(values)) {
  if (n < 1 || probs_.empty() || values_.size() != probs_.size() * static_cast<std::size_t>(n)) {
    throw DomainError("finite model needs n >= 1 and n values per probability");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw DomainError("finite model probability is negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("finite model probabilities must sum to 1");
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double m = 0.0;
      for (std::size_t w = 0; w < probs_.size(); ++w) m += probs_[w] * row(w)[a] * row(w)[b];
      if (std::abs(m - (a == b ? 1.0 : 0.0)) > 1e-9) {
        throw PreconditionError("finite model violates E X_i X_j = delta_ij at (" + std::to_string(a + 1) +
                                "," + std::to_string(b + 1) + ")");
      }
    }
  }
}

FiniteOmegaModel FiniteOmegaModel::two_point(std::span<const double> p) {
  const int n = static_cast<int>(p.size());
  if (n < 1 || n > 20) throw DomainError("two-point model supports 1 <= n <= 20");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> probs(size, 1.0);
  std::vector<double> values(size * p.size());
  for (double q : p) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("two-point probabilities must lie in (0, 1)");
  }
  for (std::size_t w = 0; w < size; ++w) {
    for (int j = 0; j < n; ++j) {
      const bool up = (w >> j) & 1U;
      probs[w] *= up ? p[j] : 1.0 - p[j];
      values[w * n + j] = up ? std::sqrt((1.0 - p[j]) / p[j]) : -std::sqrt(p[j] / (1.0 - p[j]));
    }
  }
  return {"two_point", n, std::move(probs), std::move(values)};
}

FiniteOmegaModel FiniteOmegaModel::trig_grid(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("trig grid needs n, m >= 1");
  std::vector<double> probs(static_cast<std::size_t>(m), 1.0 / m);
  std::vector<double> values(static_cast<std::size_t>(m) * n);
  for (int w = 0; w < m; ++w) {
    for (int j = 1; j <= n; ++j) {
      // Reduce j*w mod m exactly before taking the cosine.
      const double phase = static_cast<double>((static_cast<long>(j) * w) % m) / m;
      values[static_cast<std::size_t>(w) * n + (j - 1)] = std::sqrt(2.0) * std::cos(2.0 * std::numbers::pi * phase);
    }
  }
  return {"trig_grid", n, std::move(probs), std::move(values)};
}

namespace {

// Appends every sign/atom pattern of a product of identical discrete laws.
void enumerate_product(const proc::DiscreteDist& d, int n, double scale_prob, std::vector<double>& probs,
                       std::vector<double>& values) {
  const std::size_t m = d.atoms.size();
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) {
    total *= m;
    if (total > 1'000'000) throw PreconditionError("finite probability space exceeds 10^6 points");
  }
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  for (std::size_t w = 0; w < total; ++w) {
    double p = scale_prob;
    for (int j = 0; j < n; ++j) {
      p *= d.probs[digit[j]];
      values.push_back(d.atoms[digit[j]]);
    }
    probs.push_back(p);
    for (int j = 0; j < n && ++digit[j] == m; ++j) digit[j] = 0;
  }
}

}  // namespace

FiniteOmegaModel FiniteOmegaModel::from_model(const proc::SequenceModel& model, int n) {
  std::vector<double> probs;
  std::vector<double> values;
  const auto signs = proc::DiscreteDist::make({-1.0, 1.0}, {0.5, 0.5});
  if (std::holds_alternative<proc::IidRademacher>(model)) {
    enumerate_product(signs, n, 1.0, probs, values);
  } else if (const auto* s = std::get_if<proc::ScaledRademacher>(&model)) {
    for (std::size_t a = 0; a < s->r.atoms.size(); ++a) {
      const std::size_t start = values.size();
      enumerate_product(signs, n, s->r.probs[a], probs, values);
      for (std::size_t i = start; i < values.size(); ++i) values[i] *= s->r.atoms[a];
    }
  } else if (const auto* m = std::get_if<proc::DeFinettiMixture>(&model)) {
    for (std::size_t c = 0; c < m->components.size(); ++c) {
      if (m->components[c].kind != proc::MixtureComponent::Kind::Discrete) {
        throw PreconditionError("mixture with a Gaussian component has no finite probability space");
      }
      enumerate_product(m->components[c].dist, n, m->weights[c], probs, values);
    }
  } else {
    throw PreconditionError(std::string(proc::model_tag(model)) + " has no finite probability space");
  }
  if (probs.size() > 1'000'000) throw PreconditionError("finite probability space exceeds 10^6 points");
  return {std::string(proc::model_tag(model)), n, std::move(probs), std::move(values)};
}

json FiniteOmegaModel::to_json() const {
  return {{"name", name_}, {"n", n_}, {"probs", probs_}, {"values", values_}};
}

FiniteOmegaModel FiniteOmegaModel::from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("n").get<int>(), j.at("probs").get<std::vector<double>>(),
          j.at("values").get<std::vector<double>>()};
}

ExperimentReport run_char_gradient_check(const FiniteOmegaModel& model, int k, std::span<const double> ts) {
  Stopwatch clock;
  const int n = model.n();
  const slice::SliceGraph graph(n, k);
  const slice::SliceIndex index(graph);
  const std::size_t verts = index.size();
  const std::size_t omegas = model.size();

  ExperimentReport r;
  r.experiment = "char-gradient";
  r.config = {{"version", cfg::kConfigVersion}, {"experiment", "char-gradient"}, {"model", model.to_json()},
              {"k", k}, {"ts", std::vector<double>(ts.begin(), ts.end())}, {"seed", 0}};

  // S_tau(omega) for every vertex and every point of the space.
  std::vector<double> sums(verts * omegas);
  for (std::size_t v = 0; v < verts; ++v) {
    for (std::size_t w = 0; w < omegas; ++w) {
      double s = 0.0;
      for (int i : index.members(v)) s += model.row(w)[static_cast<std::size_t>(i - 1)];
      sums[v * omegas + w] = s / std::sqrt(static_cast<double>(k));
    }
  }

  const double root = std::sqrt(static_cast<double>(n) / k);
  double max_slack = -std::numeric_limits<double>::infinity();
  std::vector<cplx> f(verts);
  std::vector<std::uint32_t> scratch;
  Curve curve{"gradient", {"t[1]", "max_gradient[1]", "bound[1]", "slack[1]"}, {}};
  for (double t : ts) {
    for (std::size_t v = 0; v < verts; ++v) {
      cplx acc = 0.0;
      for (std::size_t w = 0; w < omegas; ++w) acc += model.prob(w) * std::polar(1.0, t * sums[v * omegas + w]);
      f[v] = acc;
    }
    double max_grad = 0.0;
    for (std::size_t v = 0; v < verts; ++v) {
      double g2 = 0.0;
      for (auto u : index.neighbors(v, scratch)) g2 += std::norm(f[v] - f[u]);
      max_grad = std::max(max_grad, std::sqrt(g2));
    }
    const double bound = (std::abs(t) + t * t) * root;
    max_slack = std::max(max_slack, max_grad - bound);
    curve.rows.push_back({t, max_grad, bound, max_grad - bound});
  }

  // Limiting case t -> 0: E S_tau concentrates around sqrt(k) E Xbar.
  double mean_xbar = 0.0;
  for (std::size_t w = 0; w < omegas; ++w) {
    const auto row = model.row(w);
    mean_xbar += model.prob(w) * std::accumulate(row.begin(), row.end(), 0.0) / n;
  }
  const double center = std::sqrt(static_cast<double>(k)) * mean_xbar;
  std::vector<double> es(verts);
  for (std::size_t v = 0; v < verts; ++v) {
    double m = 0.0;
    for (std::size_t w = 0; w < omegas; ++w) m += model.prob(w) * sums[v * omegas + w];
    es[v] = m - center;
  }
  double es_max = 0.0;
  double es_grad = 0.0;
  for (std::size_t v = 0; v < verts; ++v) {
    es_max = std::max(es_max, std::abs(es[v]));
    es_grad = std::max(es_grad, std::sqrt(slice::gradient_sq_norm(index, es, v)));
  }
  const auto es_moments = slice::mean_variance(es);
  Curve limit{"limit_case", {"h[1]", "measure[prob]", "bound[prob]"}, {}};
  bool limit_ok = true;
  for (int i = 1; i <= 20; ++i) {
    const double h = 0.05 * i;
    const auto hits = std::count_if(es.begin(), es.end(), [h](double x) { return std::abs(x) >= h; });
    const double measure = static_cast<double>(hits) / static_cast<double>(verts);
    const double bound = 4.0 * std::exp(-k * std::pow(h, 4) / (8.0 * (2.0 + h) * (2.0 + h)));
    limit_ok = limit_ok && measure <= bound;
    limit.rows.push_back({h, measure, bound});
  }

  r.results["max_slack"] = max_slack;
  r.results["vertices"] = verts;
  r.results["omega_points"] = omegas;
  r.results["limit_case"] = {{"max_abs_deviation", es_max},
                             {"mu_mean", es_moments.mean},
                             {"mu_variance", es_moments.variance},
                             {"max_gradient", es_grad},
                             {"gradient_bound", root}};
  r.curves = {std::move(curve), std::move(limit)};
  r.check("gradient_bound", max_slack <= 1e-10, "max slack " + format_real(max_slack));
  r.check("limit_case_mean", std::abs(es_moments.mean) <= 1e-12);
  r.check("limit_case_gradient", es_grad <= root + 1e-12);
  r.check("limit_case_deviation", limit_ok);
  r.wall_seconds = clock.seconds();
  return r;
}

ExperimentReport reproduce(const ExperimentReport& report, const RunOptions& opt) {
  const json& c = report.config;
  cfg::require_version(c);
  if (report.experiment == "concentration") return run_concentration(cfg::concentration_from_json(c), opt);
  if (report.experiment == "clt") return run_clt(cfg::clt_from_json(c), opt);
  if (report.experiment == "exchangeable") return run_exchangeable(cfg::exchangeable_from_json(c), opt);
  if (report.experiment == "graph-check") return run_graph_check(cfg::graph_check_from_json(c));
  if (report.experiment == "sympoly-check") return run_sympoly_check(cfg::sympoly_check_from_json(c));
  if (report.experiment == "char-gradient") {
    const auto ts = c.at("ts").get<std::vector<double>>();
    return run_char_gradient_check(FiniteOmegaModel::from_json(c.at("model")), c.at("k").get<int>(), ts);
  }
  throw VersionError("unknown experiment '" + report.experiment + "'");
}

}  // namespace conclab::exp
