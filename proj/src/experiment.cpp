#include "nprsim/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nprsim/csv.hpp"
#include "nprsim/errors.hpp"
#include "nprsim/log.hpp"
#include "nprsim/parallel.hpp"
#include "nprsim/rng.hpp"
#include "nprsim/stats.hpp"

namespace nprsim {

using nlohmann::json;

std::optional<Command> parse_command(const std::string& name) {
  if (name == "simulate") return Command::kSimulate;
  if (name == "select") return Command::kSelect;
  if (name == "risk") return Command::kRisk;
  if (name == "oracle-check") return Command::kOracleCheck;
  if (name == "efficiency") return Command::kEfficiency;
  if (name == "lower-bound") return Command::kLowerBound;
  return std::nullopt;
}

const char* command_name(Command cmd) {
  switch (cmd) {
    case Command::kSimulate: return "simulate";
    case Command::kSelect: return "select";
    case Command::kRisk: return "risk";
    case Command::kOracleCheck: return "oracle-check";
    case Command::kEfficiency: return "efficiency";
    case Command::kLowerBound: return "lower-bound";
  }
  return "?";
}

double ExperimentConfig::rho_for(long long n) const {
  return rho ? *rho : default_rho(n);
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw config_error(msg); }

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(std::string("expected number for '") + key + "'");
  return obj[key].get<double>();
}

MarkLaw parse_mark_law(const std::string& s) {
  if (s == "rademacher") return MarkLaw::kRademacher;
  if (s == "standard_gaussian" || s == "gaussian") return MarkLaw::kStandardGaussian;
  fail("unknown mark_law '" + s + "' (expected rademacher or standard_gaussian)");
}

LnRule parse_ln_rule(const json& obj) {
  LnRule rule;
  rule.scale = get_num(obj, "scale", 1.0);
  rule.power = get_num(obj, "power", 1.0);
  if (!(rule.scale > 0.0) || !(rule.power > 0.0))
    fail("l_n_rule scale and power must be > 0");
  return rule;
}

SignalSpec parse_signal(const json& obj) {
  if (!obj.contains("generator") || !obj["generator"].is_string())
    fail("signal section needs a 'generator' name");
  const std::string name = obj["generator"].get<std::string>();
  SignalSpec spec;
  if (obj.contains("label")) spec.label = obj["label"].get<std::string>();
  if (name == "finite-fourier") {
    FiniteFourierSpec ff;
    if (!obj.contains("coeffs") || !obj["coeffs"].is_array())
      fail("finite-fourier signal needs a 'coeffs' array");
    for (const auto& c : obj["coeffs"]) ff.coeffs.push_back(c.get<double>());
    spec.generator = ff;
  } else if (name == "boundary-ellipsoid") {
    BoundaryEllipsoidSpec be;
    be.k = static_cast<int>(get_num(obj, "k", 1));
    be.r = get_num(obj, "r", 1.0);
    if (obj.contains("coords")) {
      be.coords.clear();
      for (const auto& c : obj["coords"]) be.coords.push_back(c.get<int>());
    }
    if (obj.contains("weights")) {
      for (const auto& w : obj["weights"]) be.weights.push_back(w.get<double>());
    }
    spec.generator = be;
  } else if (name == "smooth-analytic") {
    SmoothAnalyticSpec sa;
    sa.amplitude = get_num(obj, "amplitude", 1.0);
    sa.decay = get_num(obj, "decay", 0.9);
    sa.J = static_cast<int>(get_num(obj, "J", 30));
    spec.generator = sa;
  } else {
    fail("unknown signal generator '" + name + "'");
  }
  // Build once eagerly so malformed parameters surface as config errors.
  (void)make_test_signal(spec);
  return spec;
}

std::string describe_verdict(const MembershipVerdict& v) {
  std::ostringstream os;
  os << (v.pass ? "pass" : "FAIL") << " (budget " << v.budget_margin
     << ", jump-scale " << v.jump_scale_margin << ", family " << v.family_margin
     << ", l_n " << v.l_n << ")";
  return os.str();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config root must be a JSON object");

  ExperimentConfig cfg;

  if (doc.contains("model")) {
    const json& m = doc["model"];
    cfg.sigma_star = get_num(m, "sigma_star", 1.0);
    if (!(cfg.sigma_star > 0.0)) fail("model.sigma_star must be > 0");
    if (m.contains("l_n_rule")) cfg.l_n_rule = parse_ln_rule(m["l_n_rule"]);
    if (m.contains("panel")) {
      if (!m["panel"].is_array() || m["panel"].empty())
        fail("model.panel must be a non-empty array");
      for (const auto& p : m["panel"]) {
        NoiseModel nm;
        nm.rho1 = get_num(p, "rho1", 0.0);
        nm.rho2 = get_num(p, "rho2", 0.0);
        nm.lambda = get_num(p, "lambda", 0.0);
        nm.sigma_star = cfg.sigma_star;
        if (p.contains("mark_law"))
          nm.mark_law = parse_mark_law(p["mark_law"].get<std::string>());
        if (p.contains("label")) nm.label = p["label"].get<std::string>();
        if (nm.rho1 < 0.0 || nm.rho2 < 0.0 || nm.lambda < 0.0)
          fail("panel member scales and intensity must be >= 0");
        if (noise_variance(nm) > nm.sigma_star * (1.0 + 1e-12))
          fail("panel member violates the variance budget rho1^2+rho2^2*lambda <= sigma_star");
        if (nm.label.empty())
          nm.label = "model" + std::to_string(cfg.panel.size());
        cfg.panel.push_back(nm);
      }
      NoisePanel check;
      check.models = cfg.panel;
      if (!check.contains_gaussian_member())
        fail("panel must contain the pure-Gaussian member Q0 (rho1 = sqrt(sigma_star), rho2 = 0)");
    }
  }
  if (cfg.panel.empty()) {
    NoisePanel def = default_panel(cfg.sigma_star);
    cfg.panel = def.models;
    if (!doc.contains("model") || !doc["model"].contains("l_n_rule"))
      cfg.l_n_rule = def.l_n_rule;
  }

  if (doc.contains("signal")) cfg.signal = parse_signal(doc["signal"]);

  if (doc.contains("selection")) {
    const json& s = doc["selection"];
    if (s.contains("rho")) {
      cfg.rho = s["rho"].get<double>();
      if (!(*cfg.rho > 0.0 && *cfg.rho < 1.0 / 3.0))
        fail("selection.rho must lie in (0, 1/3)");
    }
    if (s.contains("grid")) {
      const json& g = s["grid"];
      if (g.contains("eps")) cfg.grid.eps = g["eps"].get<double>();
      if (g.contains("k_star")) cfg.grid.k_star = g["k_star"].get<int>();
    }
  }

  if (!doc.contains("run")) fail("config needs a 'run' section");
  const json& run = doc["run"];
  if (run.contains("n_list")) {
    for (const auto& v : run["n_list"]) cfg.n_list.push_back(v.get<long long>());
  } else if (run.contains("n")) {
    cfg.n_list.push_back(run["n"].get<long long>());
  }
  for (long long n : cfg.n_list) {
    if (n < 1) fail("run horizons must be >= 1");
  }
  cfg.replicates = static_cast<int>(get_num(run, "replicates", 100));
  if (cfg.replicates < 2) fail("run.replicates must be >= 2");
  if (!run.contains("master_seed"))
    fail("run.master_seed is required (no wall-clock seeding)");
  cfg.master_seed = run["master_seed"].get<std::uint64_t>();
  cfg.workers = static_cast<int>(get_num(run, "workers", 1));
  if (cfg.workers < 1) fail("run.workers must be >= 1");
  if (run.contains("out_dir")) cfg.out_dir = run["out_dir"].get<std::string>();
  if (cfg.out_dir.empty()) fail("run.out_dir must not be empty");

  if (doc.contains("simulate")) {
    const json& s = doc["simulate"];
    cfg.simulate.coords = static_cast<int>(get_num(s, "coords", 16));
    if (cfg.simulate.coords < 1) fail("simulate.coords must be >= 1");
    if (s.contains("ks")) cfg.simulate.ks = s["ks"].get<bool>();
    cfg.simulate.ks_dt = get_num(s, "ks_dt", 1e-3);
    cfg.simulate.ks_n = static_cast<long long>(get_num(s, "ks_n", 20));
    cfg.simulate.ks_samples = static_cast<int>(get_num(s, "ks_samples", 10000));
  }

  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    if (o.contains("slack_constant"))
      cfg.oracle.slack_constant = o["slack_constant"].get<double>();
  }

  if (doc.contains("efficiency")) {
    const json& e = doc["efficiency"];
    cfg.efficiency.k = static_cast<int>(get_num(e, "k", 1));
    cfg.efficiency.r = get_num(e, "r", 1.0);
    if (cfg.efficiency.k < 1) fail("efficiency.k must be >= 1");
    if (!(cfg.efficiency.r > 0.0)) fail("efficiency.r must be > 0");
    if (e.contains("analytic_n_list")) {
      for (const auto& v : e["analytic_n_list"])
        cfg.efficiency.analytic_n_list.push_back(v.get<double>());
    }
    cfg.efficiency.analytic_j_max =
        static_cast<int>(get_num(e, "analytic_j_max", 128));
    if (e.contains("mc_n_list")) {
      for (const auto& v : e["mc_n_list"])
        cfg.efficiency.mc_n_list.push_back(v.get<long long>());
    }
    cfg.efficiency.mc_replicates =
        static_cast<int>(get_num(e, "mc_replicates", 0));
    if (e.contains("analytic_cap"))
      cfg.efficiency.analytic_cap = e["analytic_cap"].get<double>();
    if (e.contains("require_monotone"))
      cfg.efficiency.require_monotone = e["require_monotone"].get<bool>();
  }

  if (doc.contains("lowerbound")) {
    const json& l = doc["lowerbound"];
    cfg.lowerbound.k = static_cast<int>(get_num(l, "k", 1));
    cfg.lowerbound.r = get_num(l, "r", 1.0);
    cfg.lowerbound.eps = get_num(l, "eps", 0.1);
    cfg.lowerbound.eta = get_num(l, "eta", 1e-3);
    if (cfg.lowerbound.k < 1) fail("lowerbound.k must be >= 1");
    if (!(cfg.lowerbound.eps > 0.0 && cfg.lowerbound.eps < 1.0))
      fail("lowerbound.eps must lie in (0,1)");
    if (!(cfg.lowerbound.eta > 0.0 && cfg.lowerbound.eta < 1.0))
      fail("lowerbound.eta must lie in (0,1)");
    if (l.contains("n_list")) {
      for (const auto& v : l["n_list"])
        cfg.lowerbound.n_list.push_back(v.get<double>());
    }
    if (l.contains("nn_rule")) {
      cfg.lowerbound.rule.power = get_num(l["nn_rule"], "power", 4.0);
      cfg.lowerbound.rule.scale = get_num(l["nn_rule"], "scale", 1.0);
      if (cfg.lowerbound.rule.power < 0.0 || !(cfg.lowerbound.rule.scale > 0.0))
        fail("lowerbound.nn_rule power must be >= 0 and scale > 0");
    }
    if (l.contains("max_gap"))
      cfg.lowerbound.max_gap = l["max_gap"].get<double>();
  }

  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

NoisePanel panel_of(const ExperimentConfig& cfg) {
  NoisePanel p;
  p.models = cfg.panel;
  p.l_n_rule = cfg.l_n_rule;
  return p;
}

void require_signal(const ExperimentConfig& cfg, Command cmd) {
  if (!cfg.signal) {
    fail(std::string("command '") + command_name(cmd) +
         "' needs a signal section");
  }
}

void require_n_list(const ExperimentConfig& cfg, Command cmd) {
  if (cfg.n_list.empty()) {
    fail(std::string("command '") + command_name(cmd) +
         "' needs run.n or run.n_list");
  }
}

/// Aborts with a full membership report when any panel member fails the
/// distribution-family conditions at any requested horizon.
void gate_panel(const ExperimentConfig& cfg,
                const std::vector<long long>& horizons, std::ostream& summary) {
  bool all_ok = true;
  std::ostringstream report;
  for (long long n : horizons) {
    for (const auto& m : cfg.panel) {
      const MembershipVerdict v = family_membership(m, n, cfg.l_n_rule);
      report << "  n=" << n << " model=" << m.label << ": "
             << describe_verdict(v) << "\n";
      all_ok = all_ok && v.pass;
    }
  }
  summary << "panel membership:\n" << report.str();
  if (!all_ok) {
    fail("panel membership check failed:\n" + report.str());
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void echo_inputs(const ExperimentConfig& cfg, Command cmd, std::ostream& os) {
  os << "command: " << command_name(cmd) << "\n";
  os << "sigma_star: " << format_g(cfg.sigma_star) << "\n";
  os << "l_n rule: " << format_g(cfg.l_n_rule.scale) << "*(1+ln n)^"
     << format_g(cfg.l_n_rule.power) << "\n";
  os << "panel:";
  for (const auto& m : cfg.panel) {
    os << " " << m.label << "(rho1=" << format_g(m.rho1)
       << ",rho2=" << format_g(m.rho2) << ",lambda=" << format_g(m.lambda)
       << "," << (m.mark_law == MarkLaw::kRademacher ? "rademacher" : "gaussian")
       << ")";
  }
  os << "\n";
  if (cfg.signal) {
    os << "signal: " << make_test_signal(*cfg.signal).label << "\n";
  }
  if (!cfg.n_list.empty()) {
    os << "n_list:";
    for (long long n : cfg.n_list) os << " " << n;
    os << "\n";
  }
  os << "replicates: " << cfg.replicates << "\n";
  os << "master_seed: " << cfg.master_seed << "\n";
  os << "workers: " << cfg.workers << "\n";
}

// --- command bodies ----------------------------------------------------------

void cmd_simulate(const ExperimentConfig& cfg, std::ostream& summary,
                  RunOutcome& out) {
  require_n_list(cfg, Command::kSimulate);
  gate_panel(cfg, cfg.n_list, summary);
  const std::string path = join_path(cfg.out_dir, "simulate.csv");
  CsvWriter csv(path, {"n", "model", "j", "mean", "se_mean", "var", "se_var"});
  for (long long n : cfg.n_list) {
    const int J = static_cast<int>(std::min<long long>(cfg.simulate.coords, n));
    for (std::size_t mi = 0; mi < cfg.panel.size(); ++mi) {
      const NoiseModel& model = cfg.panel[mi];
      const std::uint64_t model_seed = mix_seed(cfg.master_seed, mi);
      std::vector<std::vector<double>> coord(static_cast<std::size_t>(J));
      for (auto& c : coord) c.resize(static_cast<std::size_t>(cfg.replicates));
      parallel_for(cfg.replicates, cfg.workers, [&](long long rep) {
        const auto xi = simulate_spectral_noise(
            model, n, J, mix_seed(model_seed, static_cast<std::uint64_t>(rep)));
        for (int j = 0; j < J; ++j) {
          coord[static_cast<std::size_t>(j)][static_cast<std::size_t>(rep)] =
              xi[static_cast<std::size_t>(j)];
        }
      });
      for (int j = 0; j < J; ++j) {
        const SampleSummary s = summarize_sample(coord[static_cast<std::size_t>(j)]);
        csv.cell(n).cell(model.label).cell(j + 1).cell(s.mean).cell(s.se_mean)
            .cell(s.variance).cell(s.se_variance);
        csv.end_row();
      }
    }
  }
  csv.close();
  out.artifacts.push_back(path);

  if (cfg.simulate.ks) {
    const std::string ks_path = join_path(cfg.out_dir, "ks.csv");
    CsvWriter ks(ks_path, {"model", "statistic", "critical", "pass"});
    bool all_pass = true;
    for (std::size_t mi = 0; mi < cfg.panel.size(); ++mi) {
      const NoiseModel& model = cfg.panel[mi];
      const int R = cfg.simulate.ks_samples;
      std::vector<double> spectral(static_cast<std::size_t>(R));
      std::vector<double> path_s(static_cast<std::size_t>(R));
      const std::uint64_t sa = mix_seed(cfg.master_seed, 0x5100 + mi);
      const std::uint64_t sb = mix_seed(cfg.master_seed, 0x5200 + mi);
      parallel_for(R, cfg.workers, [&](long long rep) {
        spectral[static_cast<std::size_t>(rep)] = simulate_spectral_noise(
            model, cfg.simulate.ks_n, 1,
            mix_seed(sa, static_cast<std::uint64_t>(rep)))[0];
        path_s[static_cast<std::size_t>(rep)] = simulate_path_integrals(
            model, cfg.simulate.ks_n, {1}, cfg.simulate.ks_dt,
            mix_seed(sb, static_cast<std::uint64_t>(rep)))[0];
      });
      const double stat = ks_statistic(spectral, path_s);
      const double crit = ks_critical(0.01, spectral.size(), path_s.size());
      const bool pass = stat < crit;
      all_pass = all_pass && pass;
      ks.cell(model.label).cell(stat).cell(crit)
          .cell(std::string(pass ? "pass" : "fail"));
      ks.end_row();
      summary << "ks " << model.label << ": stat=" << format_g(stat)
              << " critical=" << format_g(crit) << (pass ? " pass" : " FAIL")
              << "\n";
    }
    ks.close();
    out.artifacts.push_back(ks_path);
    summary << "ks overall: " << (all_pass ? "pass" : "FAIL") << "\n";
  }
}

void cmd_select(const ExperimentConfig& cfg, std::ostream& summary,
                RunOutcome& out) {
  require_signal(cfg, Command::kSelect);
  require_n_list(cfg, Command::kSelect);
  gate_panel(cfg, cfg.n_list, summary);
  const PeriodicSignal signal = make_test_signal(*cfg.signal);
  const std::string path = join_path(cfg.out_dir, "selection.csv");
  CsvWriter csv(path, {"n", "model", "beta", "t", "count", "frequency"});
  for (long long n : cfg.n_list) {
    const WeightGrid grid = weight_grid(n, cfg.grid);
    const double rho = cfg.rho_for(n);
    for (std::size_t mi = 0; mi < cfg.panel.size(); ++mi) {
      McRiskExtras extras;
      const McResult res = mc_risk(
          signal, cfg.panel[mi], EstimatorKind::kModelSelect, nullptr, &grid,
          rho, n, cfg.replicates, mix_seed(cfg.master_seed, mi), cfg.workers,
          &extras);
      for (const auto& f : extras.frequencies) {
        csv.cell(n).cell(cfg.panel[mi].label).cell(f.beta).cell(f.t)
            .cell(f.count)
            .cell(static_cast<double>(f.count) / cfg.replicates);
        csv.end_row();
      }
      summary << "n=" << n << " model=" << cfg.panel[mi].label
              << ": selected risk=" << format_g(res.mean) << " (se "
              << format_g(res.std_error) << "), mean omega "
              << format_g(extras.mean_selected_omega) << "\n";
    }
  }
  csv.close();
  out.artifacts.push_back(path);
}

void write_risk_tables(const ExperimentConfig& cfg,
                       const std::vector<RiskReport>& reports,
                       RunOutcome& out) {
  const std::string pg_path = join_path(cfg.out_dir, "risk_per_gamma.csv");
  CsvWriter pg(pg_path, {"n", "beta", "t", "mean", "se", "reps"});
  for (const auto& rep : reports) {
    for (const auto& row : rep.per_gamma) {
      pg.cell(rep.n).cell(row.beta).cell(row.t).cell(row.mean)
          .cell(row.std_error).cell(static_cast<long long>(rep.replicates));
      pg.end_row();
    }
  }
  pg.close();
  out.artifacts.push_back(pg_path);

  const std::string rob_path = join_path(cfg.out_dir, "robust.csv");
  CsvWriter rob(rob_path, {"n", "model", "mean", "se", "reps", "is_max"});
  for (const auto& rep : reports) {
    for (std::size_t m = 0; m < rep.selected.per_model.size(); ++m) {
      const auto& e = rep.selected.per_model[m];
      rob.cell(rep.n).cell(e.model_label).cell(e.result.mean)
          .cell(e.result.std_error)
          .cell(static_cast<long long>(e.result.replicates))
          .cell(static_cast<long long>(
              static_cast<int>(m) == rep.selected.argmax_model ? 1 : 0));
      rob.end_row();
    }
  }
  rob.close();
  out.artifacts.push_back(rob_path);
}

void cmd_risk(const ExperimentConfig& cfg, std::ostream& summary,
              RunOutcome& out) {
  require_signal(cfg, Command::kRisk);
  require_n_list(cfg, Command::kRisk);
  gate_panel(cfg, cfg.n_list, summary);
  const PeriodicSignal signal = make_test_signal(*cfg.signal);
  const NoisePanel panel = panel_of(cfg);
  std::vector<RiskReport> reports;
  for (long long n : cfg.n_list) {
    const WeightGrid grid = weight_grid(n, cfg.grid);
    reports.push_back(risk_report(signal, panel, grid, cfg.rho_for(n), n,
                                  cfg.replicates, cfg.master_seed, cfg.workers,
                                  /*with_selected=*/true, /*with_per_gamma=*/true));
    summary << "n=" << n
            << ": robust selected risk=" << format_g(reports.back().selected.max_risk)
            << " (model "
            << panel.models[static_cast<std::size_t>(
                                 reports.back().selected.argmax_model)]
                   .label
            << ")\n";
  }
  write_risk_tables(cfg, reports, out);
}

void cmd_oracle_check(const ExperimentConfig& cfg, std::ostream& summary,
                      RunOutcome& out) {
  require_signal(cfg, Command::kOracleCheck);
  require_n_list(cfg, Command::kOracleCheck);
  gate_panel(cfg, cfg.n_list, summary);
  const PeriodicSignal signal = make_test_signal(*cfg.signal);
  const NoisePanel panel = panel_of(cfg);

  const std::string path = join_path(cfg.out_dir, "oracle.csv");
  CsvWriter csv(path, {"lhs", "rhs_main", "slack", "verdict"});
  std::vector<RiskReport> reports;
  bool all_ok = true;
  for (long long n : cfg.n_list) {
    const WeightGrid grid = weight_grid(n, cfg.grid);
    const double rho = cfg.rho_for(n);
    const double slack_c = cfg.oracle.slack_constant.value_or(10.0 * cfg.sigma_star);
    const OracleCheckReport rep =
        oracle_check(signal, panel, grid, rho, n, cfg.replicates,
                     cfg.master_seed, cfg.workers, slack_c);
    csv.cell(rep.lhs).cell(rep.rhs_main).cell(rep.slack)
        .cell(std::string(rep.consistent ? "consistent" : "inconsistent"));
    csv.end_row();
    all_ok = all_ok && rep.consistent;
    summary << "n=" << n << ": lhs=" << format_g(rep.lhs)
            << " rhs_main=" << format_g(rep.rhs_main)
            << " slack_allowance=" << format_g(rep.slack_allowance)
            << " 3*se=" << format_g(3.0 * rep.combined_se)
            << " coefficient=" << format_g(rep.coefficient) << " -> "
            << (rep.consistent ? "consistent" : "INCONSISTENT") << "\n";
    reports.push_back(rep.tables);
  }
  csv.close();
  out.artifacts.push_back(path);
  write_risk_tables(cfg, reports, out);
  out.verdict_ok = all_ok;
  summary << "oracle verdict: " << (all_ok ? "consistent" : "inconsistent")
          << "\n";
}

void cmd_efficiency(const ExperimentConfig& cfg, std::ostream& summary,
                    RunOutcome& out) {
  const EfficiencySection& eff = cfg.efficiency;
  if (eff.analytic_n_list.empty() && eff.mc_n_list.empty())
    fail("efficiency command needs efficiency.analytic_n_list or efficiency.mc_n_list");

  std::vector<EfficiencyRow> pilot;
  if (!eff.analytic_n_list.empty()) {
    pilot = efficiency_pilot_curve(eff.k, eff.r, cfg.sigma_star,
                                   eff.analytic_n_list, eff.analytic_j_max);
  }
  std::vector<EfficiencyRow> upper;
  if (!eff.mc_n_list.empty()) {
    require_signal(cfg, Command::kEfficiency);
    gate_panel(cfg, eff.mc_n_list, summary);
    const int reps = eff.mc_replicates > 0 ? eff.mc_replicates : cfg.replicates;
    const double rho = cfg.rho ? *cfg.rho : default_rho(eff.mc_n_list.front());
    std::vector<PeriodicSignal> family = {make_test_signal(*cfg.signal)};
    upper = efficiency_mc_curve(family, panel_of(cfg), eff.k, eff.r, rho,
                                eff.mc_n_list, reps, cfg.master_seed, cfg.workers);
  }

  const std::string path = join_path(cfg.out_dir, "efficiency.csv");
  CsvWriter csv(path, {"n", "ratio", "side"});
  for (const auto& row : pilot) {
    csv.cell(row.n).cell(row.ratio).cell(row.side);
    csv.end_row();
  }
  for (const auto& row : upper) {
    csv.cell(row.n).cell(row.ratio).cell(row.side);
    csv.end_row();
  }
  csv.close();
  out.artifacts.push_back(path);

  bool ok = true;
  for (const auto& row : pilot) {
    summary << "pilot n=" << format_g(row.n) << ": ratio=" << format_g(row.ratio)
            << "\n";
  }
  for (const auto& row : upper) {
    summary << "upper n=" << format_g(row.n) << ": ratio=" << format_g(row.ratio)
            << " (se " << format_g(row.std_error) << ")\n";
  }
  if (eff.analytic_cap && !pilot.empty()) {
    const bool cap_ok = pilot.back().ratio <= *eff.analytic_cap;
    summary << "analytic cap " << format_g(*eff.analytic_cap) << " at n="
            << format_g(pilot.back().n) << ": "
            << (cap_ok ? "ok" : "VIOLATED") << "\n";
    ok = ok && cap_ok;
  }
  if (eff.require_monotone) {
    bool pilot_mono = true;
    for (std::size_t i = 1; i < pilot.size(); ++i) {
      pilot_mono = pilot_mono && pilot[i].ratio <= pilot[i - 1].ratio + 1e-12;
    }
    bool upper_mono = true;
    for (std::size_t i = 1; i < upper.size(); ++i) {
      const double slack = 3.0 * std::sqrt(upper[i].std_error * upper[i].std_error +
                                           upper[i - 1].std_error * upper[i - 1].std_error);
      upper_mono = upper_mono && upper[i].ratio <= upper[i - 1].ratio + slack;
    }
    summary << "pilot trend nonincreasing: " << (pilot_mono ? "ok" : "VIOLATED")
            << "\n";
    if (!upper.empty()) {
      summary << "mc trend nonincreasing (3se slack): "
              << (upper_mono ? "ok" : "VIOLATED") << "\n";
    }
    ok = ok && pilot_mono && upper_mono;
  }
  out.verdict_ok = ok;
}

void cmd_lower_bound(const ExperimentConfig& cfg, std::ostream& summary,
                     RunOutcome& out) {
  const LowerboundSection& lb = cfg.lowerbound;
  if (lb.n_list.empty()) fail("lower-bound command needs lowerbound.n_list");

  std::vector<PinskerLimitRow> rows;
  try {
    rows = pinsker_limit_check(lb.k, lb.r, cfg.sigma_star, lb.eps, lb.n_list,
                               lb.rule);
  } catch (const std::domain_error& e) {
    fail(std::string("lowerbound horizon infeasible: ") + e.what());
  }

  const std::string path = join_path(cfg.out_dir, "lowerbound.csv");
  CsvWriter csv(path, {"n", "bound", "limit_form", "target", "gap"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PriorDesign design =
        make_prior_design(lb.k, lb.r, cfg.sigma_star, lb.eps, lb.eta,
                          lb.n_list[i], lb.rule);
    const BayesBound bb = bayes_lower_bound(design, lb.eta);
    csv.cell(rows[i].n).cell(bb.normalized_bound).cell(rows[i].ratio)
        .cell(rows[i].target).cell(rows[i].gap);
    csv.end_row();
    summary << "n=" << format_g(rows[i].n)
            << ": bound=" << format_g(bb.normalized_bound)
            << " limit_form=" << format_g(rows[i].ratio)
            << " target=" << format_g(rows[i].target)
            << " gap=" << format_g(rows[i].gap) << "\n";
  }
  csv.close();
  out.artifacts.push_back(path);

  if (lb.max_gap) {
    const bool ok = rows.back().gap <= *lb.max_gap;
    summary << "final gap " << format_g(rows.back().gap) << " <= "
            << format_g(*lb.max_gap) << ": " << (ok ? "ok" : "VIOLATED") << "\n";
    out.verdict_ok = ok;
  }
}

}  // namespace

RunOutcome run_command(const ExperimentConfig& config, Command cmd) {
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) fail("cannot create output directory: " + config.out_dir);

  RunOutcome out;
  std::ostringstream summary;
  echo_inputs(config, cmd, summary);
  log_info(std::string("running ") + command_name(cmd));

  switch (cmd) {
    case Command::kSimulate: cmd_simulate(config, summary, out); break;
    case Command::kSelect: cmd_select(config, summary, out); break;
    case Command::kRisk: cmd_risk(config, summary, out); break;
    case Command::kOracleCheck: cmd_oracle_check(config, summary, out); break;
    case Command::kEfficiency: cmd_efficiency(config, summary, out); break;
    case Command::kLowerBound: cmd_lower_bound(config, summary, out); break;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  summary << "wall_ms: " << elapsed.count() << "\n";
  out.summary = summary.str();

  const std::string summary_path = join_path(config.out_dir, "summary.txt");
  std::ofstream sf(summary_path, std::ios::binary | std::ios::trunc);
  if (!sf) fail("cannot write " + summary_path);
  sf << out.summary;
  sf.close();
  out.artifacts.push_back(summary_path);
  return out;
}

}  // namespace nprsim
