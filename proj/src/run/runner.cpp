#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "../core/cumulants/bracket.hpp"
#include "../core/cumulants/curve.hpp"
#include "../core/cumulants/renorm.hpp"
#include "../core/cumulants/thresholds.hpp"
#include "../core/ensemble.hpp"
#include "../core/errors.hpp"
#include "../core/loggas/duality.hpp"
#include "../core/loggas/gas.hpp"
#include "../core/onsager.hpp"
#include "../core/validate.hpp"

namespace sglab {

namespace {

using nlohmann::json;

std::string num17(double v) {
  char b[48];
  snprintf(b, sizeof b, "%.17g", v);
  return b;
}

std::string num6(double v) {
  char b[32];
  snprintf(b, sizeof b, "%.6g", v);
  return b;
}

// One tabular report; cells keep their JSON types so the CSV and JSON
// renderings cannot drift apart.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string render_cell(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_float()) return num17(c.get<double>());
  return c.dump();
}

std::string meta_header(const ExperimentConfig& cfg) {
  std::string s;
  s += "# config_hash: " + config_hash(cfg) + "\n";
  s += "# master_seed: " + std::to_string(cfg.master_seed) + "\n";
  s += std::string("# version: ") + library_version() + "\n";
  return s;
}

std::string to_csv(const ExperimentConfig& cfg, const Table& t) {
  std::string out = meta_header(cfg);
  for (size_t i = 0; i < t.columns.size(); i++) {
    if (i) out += ",";
    out += t.columns[i];
  }
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); i++) {
      if (i) out += ",";
      out += render_cell(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json_mirror(const ExperimentConfig& cfg, const Table& t) {
  json j;
  j["meta"]["config_hash"] = config_hash(cfg);
  j["meta"]["master_seed"] = cfg.master_seed;
  j["meta"]["version"] = library_version();
  j["column_order"] = t.columns;
  for (size_t ci = 0; ci < t.columns.size(); ci++) {
    json arr = json::array();
    for (const auto& row : t.rows) arr.push_back(row[ci]);
    j["columns"][t.columns[ci]] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

void emit(RunResult& res, const ExperimentConfig& cfg, const std::string& stem,
          const Table& t) {
  if (cfg.csv) res.artifacts.push_back({stem + ".csv", to_csv(cfg, t)});
  if (cfg.json)
    res.artifacts.push_back({stem + ".json", to_json_mirror(cfg, t)});
}

// ---------------------------------------------------------------- commands

RunResult cmd_validate(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  auto rep = validate_kernel_assumptions(fam);

  Table t;
  t.columns = {"name", "value", "reference", "ok"};
  std::string first_fail;
  auto row = [&](const std::string& name, double v, double ref, bool ok) {
    t.rows.push_back({name, v, ref, ok ? 1 : 0});
    if (!ok && first_fail.empty()) first_fail = name;
  };
  for (const auto& e : rep.entries) row(e.name, e.coarse, e.refined, e.stable);
  row("psd_min_eig", rep.psd_min_eig, -1e-9 * rep.psd_scale, rep.psd_ok);
  row("seed_origin", rep.q0, 1.0, rep.q0_ok);
  row("density_sup", rep.density_max, rep.density_max, rep.density_ok);
  row("overall", rep.pass ? 1.0 : 0.0, 1.0, rep.pass);

  RunResult res;
  emit(res, cfg, "assumptions", t);
  res.summary = rep.pass ? "assumptions: PASS"
                         : "assumptions: FAIL (" + first_fail + ")";
  res.summary += "\n";
  return res;
}

RunResult cmd_cumulants(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  // threshold context first: refuses when no finite counterterm order exists
  auto th = threshold_index(cfg.beta);

  CurveEngine engine =
      cfg.engine == "tensor" ? CurveEngine::TensorGrid : CurveEngine::Resolved;
  auto grid = cfg.grid();
  ResolvedQuadOptions ropts;
  ropts.workers = cfg.workers;
  TensorQuadOptions topts;
  topts.workers = cfg.workers;
  auto rep = cumulant_curve(fam, cfg.beta, cfg.t_grid, cfg.order_max, engine,
                            &grid, ropts, topts);

  Table t;
  t.columns = {"t", "order", "value", "stderr", "method"};
  for (const auto& p : rep.points)
    t.rows.push_back({p.t, p.order, p.value, p.uncertainty, p.method});

  RunResult res;
  emit(res, cfg, "cumulants", t);
  std::ostringstream s;
  s << "threshold index " << th.index << ", counterterms " << th.counterterms
    << " at beta^2 = " << num6(cfg.beta * cfg.beta) << "\n";
  for (const auto& [order, slope] : rep.growth_slope)
    s << "ln |C" << order << "| growth slope " << num6(slope)
      << " (upper half of the t window)\n";
  res.summary = s.str();
  return res;
}

RunResult cmd_renorm(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  double alpha = cfg.alpha_library();
  RenormOptions ropts;
  ropts.replicas = cfg.replicas;
  ropts.master_seed = cfg.master_seed;
  ropts.workers = cfg.workers;
  auto grid = cfg.grid();
  auto flow = renorm_flow(fam, alpha, cfg.beta, cfg.t_grid, grid, ropts);

  Table t;
  t.columns = {"t",        "value",           "stderr",      "mean_exp",
               "mean_exp_stderr", "counterterm_log", "counterterms"};
  for (size_t k = 0; k < flow.size(); k++)
    t.rows.push_back({cfg.t_grid[k], flow[k].value, flow[k].se,
                      flow[k].mean_exp, flow[k].mean_exp_se,
                      flow[k].counterterm_log, flow[k].counterterms});

  RunResult res;
  emit(res, cfg, "renorm", t);
  std::ostringstream s;
  for (size_t k = 0; k < flow.size(); k++)
    s << "t = " << num6(cfg.t_grid[k]) << ": renormalized value "
      << num6(flow[k].value) << " +- " << num6(flow[k].se) << "\n";
  if (flow.size() >= 2) {
    double a = flow[flow.size() - 2].value, b = flow.back().value;
    s << "relative change over the last step: " << num6((b - a) / a) << "\n";
  }
  res.summary = s.str();
  return res;
}

RunResult cmd_onsager(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  ConfigSampler sampler;
  if (cfg.charge_class == "neutral")
    sampler = uniform_config_sampler(fam, cfg.charges, 0);
  else if (cfg.charge_class == "non-neutral")
    sampler = uniform_config_sampler(fam, cfg.charges, +1);
  else if (cfg.charge_class == "dipole")
    sampler = dipole_config_sampler(fam, cfg.charges, cfg.dipole_gamma);
  else
    sampler = uniform_config_sampler(fam, cfg.charges, -1);

  auto rep = onsager_audit(fam, sampler, cfg.charges, cfg.start_scale,
                           cfg.t_grid, cfg.samples, cfg.master_seed,
                           cfg.workers);

  Table t;
  t.columns = {"u", "inequality", "min_slack", "mean_slack", "C_hat",
               "samples"};
  for (const auto& r : rep.rows)
    t.rows.push_back(
        {r.u, r.inequality, r.min_slack, r.mean_slack, r.c_hat, r.samples});

  RunResult res;
  emit(res, cfg, "audit", t);
  std::ostringstream s;
  // overall extremes per inequality
  std::vector<std::string> names = {"baseline", "neutral-refined",
                                    "non-neutral"};
  for (const auto& name : names) {
    double mn = std::numeric_limits<double>::infinity(), ch = 0.0;
    bool seen = false;
    for (const auto& r : rep.rows)
      if (r.inequality == name) {
        mn = std::min(mn, r.min_slack);
        ch = std::max(ch, r.c_hat);
        seen = true;
      }
    if (seen)
      s << name << ": min slack " << num6(mn) << ", C_hat " << num6(ch)
        << "\n";
  }
  res.summary = s.str();
  return res;
}

GasChainOptions chain_options(const ExperimentConfig& cfg) {
  GasChainOptions opts;
  opts.seed = cfg.master_seed;
  opts.burn_in = cfg.mcmc.burn_in;
  opts.thinning = cfg.mcmc.thinning;
  opts.displace_sigma_frac = cfg.mcmc.displace_sigma;
  return opts;
}

double single_cutoff(const ExperimentConfig& cfg, const char* command) {
  if (cfg.t_grid.size() != 1)
    throw ConfigError(std::string(command) +
                      " needs exactly one cutoff in numerics.t_grid");
  return cfg.t_grid[0];
}

double accept_rate(const MoveStats& m) {
  return m.proposed ? double(m.accepted) / double(m.proposed) : 0.0;
}

RunResult cmd_gibbs(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  double t = single_cutoff(cfg, "gibbs");
  double alpha = cfg.alpha_gas();
  auto opts = chain_options(cfg);
  bool keep = cfg.mcmc.persist_samples;
  auto run = run_gas_chain(fam, alpha, cfg.beta, t, cfg.samples, opts, keep);

  Table t1;
  t1.columns = {"samples",       "mean_n",        "stderr",
                "tau_int",       "accept_insert", "accept_delete",
                "accept_displace"};
  t1.rows.push_back({run.n_series.size(), run.mean_n, run.mean_n_se,
                     run.tau_int, accept_rate(run.insert_stats),
                     accept_rate(run.delete_stats),
                     accept_rate(run.displace_stats)});

  RunResult res;
  emit(res, cfg, "gas_stats", t1);

  if (keep) {
    std::string nd;
    for (size_t i = 0; i < run.samples.size(); i++) {
      json rec;
      rec["step"] = cfg.mcmc.burn_in + (i + 1) * cfg.mcmc.thinning;
      rec["n"] = run.samples[i].size();
      rec["positions"] = run.samples[i].pos;
      rec["signs"] = run.samples[i].sign;
      nd += rec.dump() + "\n";
    }
    res.artifacts.push_back({"gas_samples.ndjson", nd});
  }

  std::ostringstream s;
  s << "mean particle count " << num6(run.mean_n) << " +- "
    << num6(run.mean_n_se) << " (tau_int " << num6(run.tau_int) << ")\n";
  s << "acceptance: insert " << num6(accept_rate(run.insert_stats))
    << ", delete " << num6(accept_rate(run.delete_stats)) << ", displace "
    << num6(accept_rate(run.displace_stats)) << "\n";
  res.summary = s.str();
  return res;
}

RunResult cmd_duality(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  double t = single_cutoff(cfg, "fourier-duality");
  double alpha_gas = cfg.alpha_gas();
  auto theta = cfg.test_function();
  if (theta.zero())
    throw ConfigError("model.test_function is required for this command");

  auto run = run_gas_chain(fam, alpha_gas, cfg.beta, t, cfg.samples,
                           chain_options(cfg), true);
  auto gas = charge_fourier(run.samples, theta);

  auto grid = cfg.grid();
  StreamOptions sopts;
  sopts.workers = cfg.workers;
  auto ens =
      sample_ensemble(fam, grid, {t}, cfg.replicas, cfg.master_seed, sopts);
  auto field = sg_ratio(ens, 2.0 * alpha_gas, cfg.beta, 0, theta);

  Table tb;
  tb.columns = {"source", "value_re", "value_im", "stderr_re", "stderr_im",
                "n"};
  tb.rows.push_back({"gas", gas.mean.real(), gas.mean.imag(), gas.se_re,
                     gas.se_im, gas.n});
  tb.rows.push_back({"field", field.value.real(), field.value.imag(),
                     field.se_re, field.se_im, field.n});
  double dre = gas.mean.real() - field.value.real();
  double dim = gas.mean.imag() - field.value.imag();
  tb.rows.push_back({"difference", dre, dim, std::hypot(gas.se_re, field.se_re),
                     std::hypot(gas.se_im, field.se_im),
                     std::min(gas.n, field.n)});

  RunResult res;
  emit(res, cfg, "duality", tb);
  std::ostringstream s;
  s << "gas Fourier mean " << num6(gas.mean.real()) << " + "
    << num6(gas.mean.imag()) << "i +- " << num6(gas.se_re) << "\n";
  s << "field ratio " << num6(field.value.real()) << " + "
    << num6(field.value.imag()) << "i +- " << num6(field.se_re) << "\n";
  s << "difference / combined stderr (real part): "
    << num6(std::fabs(dre) / std::max(1e-300, std::hypot(gas.se_re, field.se_re)))
    << "\n";
  if (!grid.resolves(t))
    s << "warning: grid spacing does not resolve the shortest scale e^{-t}\n";
  res.summary = s.str();
  return res;
}

RunResult cmd_correlations(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  if (cfg.insertion_z.empty())
    throw ConfigError("model.insertions is required for this command");
  double alpha = cfg.alpha_library();
  auto grid = cfg.grid();
  StreamOptions sopts;
  sopts.workers = cfg.workers;
  auto sweep = correlation_sweep(fam, grid, cfg.t_grid, cfg.replicas,
                                 cfg.master_seed, alpha, cfg.beta,
                                 cfg.insertion_z, cfg.insertion_eta, sopts);

  Table t;
  t.columns = {"t",         "value_re",  "value_im", "stderr_re", "stderr_im",
               "ratio_re",  "ratio_im",  "prefactor", "flagged"};
  for (size_t k = 0; k < sweep.size(); k++)
    t.rows.push_back({cfg.t_grid[k], sweep[k].value.real(),
                      sweep[k].value.imag(), sweep[k].se_re, sweep[k].se_im,
                      sweep[k].ratio.real(), sweep[k].ratio.imag(),
                      sweep[k].prefactor, sweep[k].flagged ? 1 : 0});

  RunResult res;
  emit(res, cfg, "correlations", t);
  std::ostringstream s;
  for (size_t k = 0; k < sweep.size(); k++)
    s << "t = " << num6(cfg.t_grid[k]) << ": ratio "
      << num6(sweep[k].value.real()) << " + " << num6(sweep[k].value.imag())
      << "i +- " << num6(sweep[k].se_re) << "\n";
  if (!sweep.empty() && sweep.front().flagged)
    s << "warning: charge strength outside the proven validity range "
         "((1+2 max|eta|) beta^2 >= 2)\n";
  res.summary = s.str();
  return res;
}

RunResult cmd_bracket(const ExperimentConfig& cfg) {
  auto fam = cfg.family();
  auto grid = cfg.grid();
  auto scan =
      bracket12_bound_scan(fam, cfg.beta, cfg.t_grid, grid, cfg.workers);

  Table t;
  t.columns = {"s", "value"};
  for (size_t k = 0; k < scan.s.size(); k++)
    t.rows.push_back({scan.s[k], scan.value[k]});

  RunResult res;
  emit(res, cfg, "bracket", t);
  std::ostringstream s;
  if (scan.s.size() >= 2)
    s << "ln B(s) growth slope " << num6(scan.slope) << "\n";
  else
    s << "B(" << num6(scan.s.empty() ? 0.0 : scan.s[0]) << ") = "
      << num6(scan.value.empty() ? 0.0 : scan.value[0]) << "\n";
  res.summary = s.str();
  return res;
}

}  // namespace

RunResult run_command(const ExperimentConfig& cfg, const std::string& command) {
  if (command == "validate-kernel") return cmd_validate(cfg);
  if (command == "cumulants") return cmd_cumulants(cfg);
  if (command == "renorm-flow") return cmd_renorm(cfg);
  if (command == "onsager-audit") return cmd_onsager(cfg);
  if (command == "gibbs") return cmd_gibbs(cfg);
  if (command == "fourier-duality") return cmd_duality(cfg);
  if (command == "correlations") return cmd_correlations(cfg);
  if (command == "bracket-scan") return cmd_bracket(cfg);
  throw ConfigError("unknown command: " + command);
}

void write_artifacts(const RunResult& res, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw NumericalError("cannot create output directory " + dir + ": " +
                         ec.message());
  for (const auto& art : res.artifacts) {
    fs::path p = fs::path(dir) / art.filename;
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw NumericalError("cannot open " + p.string() + " for writing");
    f.write(art.content.data(),
            static_cast<std::streamsize>(art.content.size()));
    if (!f) throw NumericalError("failed while writing " + p.string());
  }
}

}  // namespace sglab
