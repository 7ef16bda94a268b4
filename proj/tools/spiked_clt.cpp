// Command-line front end: CLT parameter evaluation, Monte Carlo simulation,
// power curves, the identity regression suite and the oracle self-test.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spikedclt/clt.hpp"
#include "spikedclt/closed_forms.hpp"
#include "spikedclt/ensemble.hpp"
#include "spikedclt/identities.hpp"
#include "spikedclt/monte_carlo.hpp"
#include "spikedclt/quadrature.hpp"

using nlohmann::json;
namespace sc = spikedclt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(path);
  if (!os) throw sc::domain_error("cannot open output path: " + path);
  os << payload;
  if (!os) throw sc::domain_error("cannot write output path: " + path);
}

struct ModelFlags {
  std::string model = "A";
  double c = 0.0, c1 = 0.0, c2 = 0.0, spike = 0.0;
};

sc::EnsembleSpec spec_from_flags(const ModelFlags& f) {
  if (f.model == "A") return sc::EnsembleSpec::model_a(f.c, f.spike);
  if (f.model == "B") return sc::EnsembleSpec::model_b(f.c, f.spike);
  if (f.model == "C") return sc::EnsembleSpec::model_c(f.c1, f.c2, f.spike);
  throw sc::domain_error("unknown model '" + f.model + "' (expected A, B or C)");
}

// Rician convenience flags: T = nt (K0/m + 1) / (n P) with m = max(nr, nt),
// n = min(nr, nt) and P from its dB value.
struct RicianFlags {
  double p_db = 0.0, k0 = 0.0;
  int nr = 0, nt = 0;
  bool active = false;
};

double rician_T(const RicianFlags& r) {
  if (r.nr < 1 || r.nt < 1) throw sc::domain_error("--nr and --nt must be positive");
  if (r.k0 < 0.0) throw sc::domain_error("--K0 must be >= 0");
  const int m = std::max(r.nr, r.nt), n = std::min(r.nr, r.nt);
  const double P = std::pow(10.0, r.p_db / 10.0);
  return r.nt * (r.k0 / m + 1.0) / (n * P);
}

json clt_json(const sc::EnsembleSpec& spec, const std::string& statistic_text,
              const sc::CltParams& p, const sc::SupportInterval& iv,
              const sc::SpikeGeometry& geom) {
  json j;
  j["model"] = sc::to_string(spec.model);
  if (spec.model == sc::Model::C) {
    j["c1"] = spec.c1;
    j["c2"] = spec.c2;
  } else {
    j["c"] = spec.c;
  }
  j["spike"] = spec.spike;
  j["statistic"] = statistic_text;
  j["a"] = iv.a;
  j["b"] = iv.b;
  j["z0"] = std::isnan(geom.z0) ? json() : json(geom.z0);
  j["S"] = std::isnan(geom.S) ? json() : json(geom.S);
  j["w"] = std::isnan(geom.w) ? json() : json(geom.w);
  j["threshold"] = geom.threshold;
  j["regime"] = sc::to_string(p.regime);
  j["n"] = p.n;
  j["mu"] = p.mu;
  j["sigma2"] = p.sigma2;
  j["mu_bar"] = p.mu_bar;
  j["predicted_mean"] = p.predicted_mean;
  j["outlier_adjusted_mean"] = p.outlier_adjusted_mean;
  return j;
}

int threads_from_env() {
  if (const char* env = std::getenv("SPIKED_CLT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

int run_params(const ModelFlags& mf, const std::string& stat_text, int n,
               const std::string& out, const std::string& format) {
  const sc::EnsembleSpec spec = spec_from_flags(mf);
  const sc::SupportInterval iv = sc::support_interval(spec);
  const sc::LinearStatistic stat = sc::parse_statistic(stat_text, spec, iv);
  const sc::CltParams p = sc::clt_params(spec, stat, n);
  const json j = clt_json(spec, stat_text, p, iv, sc::spike_geometry(spec));
  if (format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      os << it.key() << "," << (it->is_number_float() ? fmt(it->get<double>()) : it->dump())
         << "\n";
    write_output(out, os.str());
  } else {
    write_output(out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int run_simulate(ModelFlags mf, std::string stat_text, sc::SampleConfig cfg,
                 const RicianFlags& rician, const std::string& out,
                 const std::string& hist_out) {
  if (rician.active) {
    if (mf.model != "B") throw sc::domain_error("Rician flags apply to model B");
    cfg.n = std::min(rician.nr, rician.nt);
    cfg.m = std::max(rician.nr, rician.nt);
    mf.spike = rician.k0;
    stat_text = "capacity:T=" + fmt(rician_T(rician));
  }
  if (cfg.n < 1) throw sc::domain_error("simulate needs --n >= 1");
  if (mf.model == "C") {
    mf.c1 = double(cfg.m1) / cfg.n;
    mf.c2 = double(cfg.m2) / cfg.n;
  } else {
    mf.c = double(cfg.m) / cfg.n;
  }
  cfg.spike = mf.spike;  // --spike parses into the model flags
  const sc::EnsembleSpec spec = spec_from_flags(mf);
  const sc::SupportInterval iv = sc::support_interval(spec);
  const sc::LinearStatistic stat = sc::parse_statistic(stat_text, spec, iv);
  if (cfg.threads == 0) cfg.threads = threads_from_env();

  const sc::EmpiricalReport rep = sc::run_experiment(spec, stat, cfg);

  json j = clt_json(spec, stat_text, rep.prediction, iv, sc::spike_geometry(spec));
  j["seed"] = cfg.seed;
  j["trials_requested"] = cfg.trials;
  j["trials"] = rep.trials;
  j["discarded"] = rep.discarded;
  if (spec.model == sc::Model::C) {
    j["m1"] = cfg.m1;
    j["m2"] = cfg.m2;
  } else {
    j["m"] = cfg.m;
  }
  j["comparison_mean_used"] = rep.comparison_mean_used;
  j["sample_mean"] = rep.sample_mean;
  j["sample_var"] = rep.sample_var;
  j["ks_distance"] = rep.ks_distance;
  j["mean_zscore"] = rep.mean_zscore;
  j["histogram"] = {{"edges", rep.histogram.edges}, {"counts", rep.histogram.counts}};
  write_output(out, j.dump(2) + "\n");

  if (!hist_out.empty()) {
    std::ostringstream os;
    os << "bin_left,bin_right,count,density\n";
    for (std::size_t b = 0; b < rep.histogram.counts.size(); ++b) {
      const double lo = rep.histogram.edges[b], hi = rep.histogram.edges[b + 1];
      const double density = rep.histogram.counts[b] / (rep.trials * (hi - lo));
      os << fmt(lo) << "," << fmt(hi) << "," << rep.histogram.counts[b] << ","
         << fmt(density) << "\n";
    }
    write_output(hist_out, os.str());
  }
  return kExitOk;
}

int run_power(double alpha, double c1, double c2, std::optional<double> nu,
              const std::string& nu_grid, const std::string& out, const std::string& format) {
  std::vector<double> nus;
  if (!nu_grid.empty()) {
    double lo = 0, hi = 0;
    int steps = 0;
    char colon1 = 0, colon2 = 0;
    std::istringstream is(nu_grid);
    is >> lo >> colon1 >> hi >> colon2 >> steps;
    if (!is || colon1 != ':' || colon2 != ':' || steps < 2 || !(hi > lo) || lo < 0.0)
      throw sc::domain_error("--nu-grid syntax is lo:hi:steps with steps >= 2");
    for (int i = 0; i < steps; ++i) nus.push_back(lo + (hi - lo) * i / (steps - 1));
  } else if (nu.has_value()) {
    nus.push_back(*nu);
  } else {
    throw sc::domain_error("power needs --nu or --nu-grid");
  }

  std::ostringstream os;
  json rows = json::array();
  if (format != "json") os << "alpha,nu,c1,c2,beta\n";
  for (double v : nus) {
    const double beta = sc::test_power({alpha, v, c1, c2});
    if (format == "json")
      rows.push_back({{"alpha", alpha}, {"nu", v}, {"c1", c1}, {"c2", c2}, {"beta", beta}});
    else
      os << fmt(alpha) << "," << fmt(v) << "," << fmt(c1) << "," << fmt(c2) << ","
         << fmt(beta) << "\n";
  }
  write_output(out, format == "json" ? rows.dump(2) + "\n" : os.str());
  return kExitOk;
}

int run_identities(int draws, std::uint64_t seed, const std::string& out,
                   const std::string& format) {
  const auto summaries = sc::run_identity_suite(draws, seed);
  bool all_ok = true;
  std::ostringstream os;
  json rows = json::array();
  if (format != "json") os << "id,draws,max_residual\n";
  for (const auto& s : summaries) {
    all_ok = all_ok && s.max_residual < 1e-9;
    if (format == "json")
      rows.push_back({{"id", s.id}, {"draws", s.draws}, {"max_residual", s.max_residual}});
    else
      os << s.id << "," << s.draws << "," << fmt(s.max_residual) << "\n";
  }
  write_output(out, format == "json" ? rows.dump(2) + "\n" : os.str());
  return all_ok ? kExitOk : kExitNumerical;
}

int run_selftest() {
  bool ok = true;
  auto report = [&ok](const std::string& name, bool pass, double value) {
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << name << " (" << fmt(value) << ")\n";
  };

  const sc::QuadratureConfig cfg;
  const std::vector<std::pair<std::string, std::vector<double>>> stats = {
      {"linear", {}}, {"polynomial", {0, 0, 1}}, {"capacity", {1.0}}, {"log1p", {}}};

  for (double c : {1.5, 2.0, 5.0}) {
    const auto spec = sc::EnsembleSpec::model_a(c, 0.0);
    const auto iv = sc::support_interval(spec);
    for (const auto& [kind, params] : stats) {
      const auto stat = sc::make_statistic(kind, params);
      const auto series = sc::chebyshev_coefficients(stat, iv, cfg);
      const double s2 = sc::variance_from_series(series);
      const double pv = sc::variance_pv_oracle(stat, iv, cfg);
      report("variance oracle " + kind + " (model A, c=" + fmt(c) + ")",
             std::abs(s2 - pv) <= 1e-6 * (1.0 + s2), std::abs(s2 - pv));
    }
    const auto lrt = sc::make_statistic("lrt", {c});
    if (iv.a > 0.0) {
      const auto series = sc::chebyshev_coefficients(lrt, iv, cfg);
      const double s2 = sc::variance_from_series(series);
      const double pv = sc::variance_pv_oracle(lrt, iv, cfg);
      report("variance oracle lrt (model A, c=" + fmt(c) + ")",
             std::abs(s2 - pv) <= 1e-6 * (1.0 + s2), std::abs(s2 - pv));
    }
  }
  {
    const auto spec = sc::EnsembleSpec::model_c(2.0, 2.0, 0.0);
    const auto iv = sc::support_interval(spec);
    for (const auto& [kind, params] : stats) {
      const auto g = sc::compose_for_model_c(sc::make_statistic(kind, params));
      const auto series = sc::chebyshev_coefficients(g, iv, cfg);
      const double s2 = sc::variance_from_series(series);
      const double pv = sc::variance_pv_oracle(g, iv, cfg);
      report("variance oracle " + kind + " (model C)", std::abs(s2 - pv) <= 1e-6 * (1.0 + s2),
             std::abs(s2 - pv));
    }
  }
  // Zero-spike reductions: the O(1) correction vanishes identically.
  for (double c : {1.2, 2.0, 5.0}) {
    const auto p = sc::clt_params(sc::EnsembleSpec::model_b(c, 0.0),
                                  sc::make_statistic("log1p", {}), 10);
    report("zero-spike reduction (model B, c=" + fmt(c) + ")", p.mu_bar == 0.0, p.mu_bar);
  }
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic Gaussian laws of linear spectral statistics for spiked "
               "Hermitian ensembles"};
  app.require_subcommand(1);

  ModelFlags mf;
  std::string stat_text, out_path, hist_out, format;
  int n_dim = 100;

  auto add_model_flags = [&mf](CLI::App* cmd) {
    cmd->add_option("--model", mf.model, "ensemble: A, B or C");
    cmd->add_option("--c", mf.c, "aspect ratio m/n (models A/B)");
    cmd->add_option("--c1", mf.c1, "aspect ratio m1/n (model C)");
    cmd->add_option("--c2", mf.c2, "aspect ratio m2/n (model C)");
    cmd->add_option("--spike", mf.spike, "spike strength (delta or nu)");
  };

  auto* params = app.add_subcommand("params", "predicted Gaussian parameters");
  add_model_flags(params);
  params->add_option("--statistic", stat_text, "statistic spec")->required();
  params->add_option("--n", n_dim, "matrix dimension for the predicted mean (default 100)");
  params->add_option("--out", out_path, "output path (default stdout)");
  params->add_option("--format", format, "json (default) or csv");

  sc::SampleConfig scfg;
  scfg.n = 0;  // required unless the Rician shorthand supplies it
  RicianFlags rician;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo comparison run");
  add_model_flags(simulate);
  simulate->add_option("--statistic", stat_text, "statistic spec");
  simulate->add_option("--n", scfg.n, "matrix dimension");
  simulate->add_option("--m", scfg.m, "degrees of freedom (models A/B)");
  simulate->add_option("--m1", scfg.m1, "degrees of freedom of W1 (model C)");
  simulate->add_option("--m2", scfg.m2, "degrees of freedom of W2 (model C)");
  simulate->add_option("--trials", scfg.trials, "number of Monte Carlo trials");
  simulate->add_option("--seed", scfg.seed, "stream seed");
  simulate->add_option("--threads", scfg.threads,
                       "worker threads (default: SPIKED_CLT_THREADS or all cores)");
  simulate->add_option("--bins", scfg.histogram_bins, "histogram bins");
  auto* pdb = simulate->add_option("--P-db", rician.p_db, "SNR in dB (capacity shorthand)");
  simulate->add_option("--K0", rician.k0, "Rician factor K0 (capacity shorthand)");
  simulate->add_option("--nr", rician.nr, "receive antennas (capacity shorthand)");
  simulate->add_option("--nt", rician.nt, "transmit antennas (capacity shorthand)");
  simulate->add_option("--out", out_path, "output path (default stdout)");
  simulate->add_option("--hist-out", hist_out, "also write the histogram as CSV");

  double alpha = 0.05, c1 = 0.0, c2 = 0.0;
  std::optional<double> nu;
  std::string nu_grid;
  auto* power = app.add_subcommand("power", "asymptotic test power");
  power->add_option("--alpha", alpha, "nominal level")->required();
  power->add_option("--c1", c1, "aspect ratio m1/n")->required();
  power->add_option("--c2", c2, "aspect ratio m2/n")->required();
  power->add_option("--nu", nu, "single spike value");
  power->add_option("--nu-grid", nu_grid, "lo:hi:steps grid of spike values");
  power->add_option("--out", out_path, "output path (default stdout)");
  power->add_option("--format", format, "csv (default) or json");

  int draws = 100;
  std::uint64_t id_seed = 20240901;
  auto* identities = app.add_subcommand("identities", "closed-form identity sweep");
  identities->add_option("--draws", draws, "random parameter draws per identity");
  identities->add_option("--seed", id_seed, "draw seed");
  identities->add_option("--out", out_path, "output path (default stdout)");
  identities->add_option("--format", format, "csv (default) or json");

  auto* selftest = app.add_subcommand("selftest", "variance oracle equivalence suite");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the usage/error text
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (params->parsed()) return run_params(mf, stat_text, n_dim, out_path, format);
    if (simulate->parsed()) {
      rician.active = pdb->count() > 0;
      if (rician.active) {
        for (const char* f : {"--n", "--m", "--spike", "--statistic"})
          if (simulate->get_option(f)->count() > 0)
            throw sc::domain_error(std::string("the Rician shorthand replaces ") + f);
      }
      return run_simulate(mf, stat_text, scfg, rician, out_path, hist_out);
    }
    if (power->parsed()) return run_power(alpha, c1, c2, nu, nu_grid, out_path, format);
    if (identities->parsed()) return run_identities(draws, id_seed, out_path, format);
    if (selftest->parsed()) return run_selftest();
  } catch (const sc::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sc::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
