#include "nprsim/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nprsim/parallel.hpp"
#include "nprsim/rng.hpp"

namespace nprsim {

MiseValue mise(const std::vector<double>& estimate_coeffs,
               const PeriodicSignal& signal) {
  const std::size_t len = std::max(estimate_coeffs.size(), signal.coeffs.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double c = j < estimate_coeffs.size() ? estimate_coeffs[j] : 0.0;
    const double t = j < signal.coeffs.size() ? signal.coeffs[j] : 0.0;
    const double d = c - t;
    sum += d * d;
  }
  return MiseValue{sum, signal.tail_bound};
}

double gaussian_risk_exact(const PeriodicSignal& signal,
                           const WeightSequence& gamma, double sigma_star,
                           long long n) {
  double bias = 0.0;
  for (std::size_t j = 1; j <= signal.coeffs.size(); ++j) {
    const double g = gamma.value(static_cast<long long>(j));
    const double t = signal.coeffs[j - 1];
    bias += (1.0 - g) * (1.0 - g) * t * t;
  }
  return bias + signal.tail_bound +
         sigma_star * gamma.sum_sq / static_cast<double>(n);
}

double gaussian_risk_exact(const PeriodicSignal& signal,
                           const std::vector<double>& gamma_values,
                           double sigma_star, long long n) {
  double bias = 0.0;
  double sum_sq = 0.0;
  const std::size_t len = std::max(gamma_values.size(), signal.coeffs.size());
  for (std::size_t j = 0; j < len; ++j) {
    const double g = j < gamma_values.size() ? gamma_values[j] : 0.0;
    const double t = j < signal.coeffs.size() ? signal.coeffs[j] : 0.0;
    bias += (1.0 - g) * (1.0 - g) * t * t;
    sum_sq += g * g;
  }
  return bias + signal.tail_bound + sigma_star * sum_sq / static_cast<double>(n);
}

double pinsker_constant(int k, double r, double sigma_star) {
  if (k < 1) throw std::invalid_argument("pinsker_constant: k must be >= 1");
  if (!(r > 0.0) || !(sigma_star > 0.0))
    throw std::invalid_argument("pinsker_constant: r and sigma_star must be > 0");
  const double kk = static_cast<double>(k);
  const double expo = 2.0 * kk + 1.0;
  return std::pow(expo * r, 1.0 / expo) *
         std::pow(sigma_star * kk / ((kk + 1.0) * std::numbers::pi),
                  2.0 * kk / expo);
}

double oracle_coefficient(double rho) {
  if (!(rho > 0.0 && rho < 1.0 / 3.0))
    throw std::invalid_argument("oracle_coefficient: rho must lie in (0, 1/3)");
  return (1.0 + 3.0 * rho - 2.0 * rho * rho) / (1.0 - 3.0 * rho);
}

UpperBoundTerms upper_bound_terms(int k, double r, double sigma_star) {
  if (k < 1) throw std::invalid_argument("upper_bound_terms: k must be >= 1");
  const double kk = static_cast<double>(k);
  const double expo = 2.0 * kk + 1.0;
  const double tau_k = (kk + 1.0) * expo / (std::pow(std::numbers::pi, 2.0 * kk) * kk);
  UpperBoundTerms out;
  out.upsilon1 = std::pow(r, 1.0 / expo) /
                 (std::pow(std::numbers::pi, 2.0 * kk) *
                  std::pow(tau_k, 2.0 * kk / expo));
  out.upsilon2 = 2.0 * std::pow(tau_k, 1.0 / expo) * kk * kk / ((kk + 1.0) * expo);
  out.reconstruction = std::pow(sigma_star, 2.0 * kk / expo) * out.upsilon1 +
                       sigma_star * std::pow(r / sigma_star, 1.0 / expo) *
                           out.upsilon2;
  out.pinsker = pinsker_constant(k, r, sigma_star);
  return out;
}

// --- Monte Carlo engine ------------------------------------------------------

namespace {

struct GammaView {
  const WeightSequence* gamma = nullptr;
  double tail_term = 0.0;  // sum of theta_j^2 the filter cannot reach
};

// Energy of the signal beyond the filter support; constant per (gamma, signal).
double tail_term_for(const WeightSequence& gamma, const PeriodicSignal& signal) {
  double t = 0.0;
  for (std::size_t j = static_cast<std::size_t>(gamma.support_end()) + 1;
       j <= signal.coeffs.size(); ++j) {
    t += signal.coeffs[j - 1] * signal.coeffs[j - 1];
  }
  return t;
}

double mise_exact_part(const SpectralObservation& obs,
                       const WeightSequence& gamma,
                       const PeriodicSignal& signal, double tail_term) {
  const long long support = std::min<long long>(gamma.support_end(), obs.n);
  double sum = tail_term;
  for (long long j = 1; j <= support; ++j) {
    const double g = gamma.values[static_cast<std::size_t>(j - 1)];
    const double th = obs.theta_hat[static_cast<std::size_t>(j - 1)];
    const double t = signal.coeff(static_cast<std::size_t>(j));
    const double d = g * th - t;
    sum += d * d;
  }
  return sum;
}

McResult summarize(const std::vector<double>& values, double tail_bound) {
  McResult r;
  r.replicates = static_cast<int>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  if (values.size() > 1) var /= static_cast<double>(values.size() - 1);
  r.mean = mean + tail_bound;
  r.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return r;
}

struct ModelPass {
  std::vector<std::vector<double>> per_gamma;  // [gamma][replicate]
  std::vector<double> selected;                // [replicate]
  std::vector<int> selected_member;            // [replicate]
  std::vector<double> selected_omega;          // [replicate]
};

ModelPass run_model_pass(const PeriodicSignal& signal, const NoiseModel& model,
                         const std::vector<GammaView>& gammas,
                         const WeightGrid* grid,
                         const std::vector<double>* grid_tails, double rho,
                         long long n, int replicates, std::uint64_t model_seed,
                         int workers, bool want_selected) {
  ModelPass pass;
  pass.per_gamma.assign(gammas.size(),
                        std::vector<double>(static_cast<std::size_t>(replicates)));
  if (want_selected) {
    pass.selected.resize(static_cast<std::size_t>(replicates));
    pass.selected_member.resize(static_cast<std::size_t>(replicates));
    pass.selected_omega.resize(static_cast<std::size_t>(replicates));
  }
  parallel_for(replicates, workers, [&](long long rep) {
    const std::uint64_t rep_seed = mix_seed(model_seed, static_cast<std::uint64_t>(rep));
    const SpectralObservation obs = observe(signal, model, n, rep_seed);
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      pass.per_gamma[g][static_cast<std::size_t>(rep)] =
          mise_exact_part(obs, *gammas[g].gamma, signal, gammas[g].tail_term);
    }
    if (want_selected) {
      const SelectionResult sel = select(obs, *grid, rho);
      pass.selected[static_cast<std::size_t>(rep)] = mise_exact_part(
          obs, sel.gamma_hat, signal,
          (*grid_tails)[static_cast<std::size_t>(sel.member_index)]);
      pass.selected_member[static_cast<std::size_t>(rep)] = sel.member_index;
      pass.selected_omega[static_cast<std::size_t>(rep)] = sel.gamma_hat.omega;
    }
  });
  return pass;
}

}  // namespace

McResult mc_risk(const PeriodicSignal& signal, const NoiseModel& model,
                 EstimatorKind kind, const WeightSequence* fixed_gamma,
                 const WeightGrid* grid, double rho, long long n,
                 int replicates, std::uint64_t master_seed, int workers,
                 McRiskExtras* extras) {
  if (replicates < 2) throw std::invalid_argument("mc_risk: replicates must be >= 2");
  std::vector<GammaView> gammas;
  std::vector<double> grid_tails;
  bool want_selected = kind == EstimatorKind::kModelSelect;
  if (kind == EstimatorKind::kFixedGamma) {
    if (fixed_gamma == nullptr)
      throw std::invalid_argument("mc_risk: fixed estimator needs a weight sequence");
    gammas.push_back({fixed_gamma, tail_term_for(*fixed_gamma, signal)});
  } else {
    if (grid == nullptr) throw std::invalid_argument("mc_risk: selection needs a grid");
    grid_tails.reserve(grid->members.size());
    for (const auto& g : grid->members) grid_tails.push_back(tail_term_for(g, signal));
  }
  const ModelPass pass =
      run_model_pass(signal, model, gammas, grid, &grid_tails, rho, n,
                     replicates, master_seed, workers, want_selected);
  if (kind == EstimatorKind::kFixedGamma) {
    return summarize(pass.per_gamma[0], signal.tail_bound);
  }
  if (extras != nullptr) {
    std::vector<long long> counts(grid->members.size(), 0);
    double mean_omega = 0.0;
    for (std::size_t i = 0; i < pass.selected.size(); ++i) {
      counts[static_cast<std::size_t>(pass.selected_member[i])] += 1;
      mean_omega += pass.selected_omega[i];
    }
    extras->mean_selected_omega = mean_omega / static_cast<double>(replicates);
    extras->frequencies.clear();
    for (std::size_t g = 0; g < counts.size(); ++g) {
      if (counts[g] > 0) {
        extras->frequencies.push_back(
            {grid->members[g].beta, grid->members[g].t, counts[g]});
      }
    }
  }
  return summarize(pass.selected, signal.tail_bound);
}

RobustResult robust_risk(const PeriodicSignal& signal, const NoisePanel& panel,
                         EstimatorKind kind, const WeightSequence* fixed_gamma,
                         const WeightGrid* grid, double rho, long long n,
                         int replicates, std::uint64_t master_seed, int workers) {
  if (panel.models.empty()) throw std::invalid_argument("robust_risk: empty panel");
  RobustResult out;
  for (std::size_t m = 0; m < panel.models.size(); ++m) {
    const std::uint64_t model_seed = mix_seed(master_seed, static_cast<std::uint64_t>(m));
    McResult res = mc_risk(signal, panel.models[m], kind, fixed_gamma, grid, rho,
                           n, replicates, model_seed, workers, nullptr);
    out.per_model.push_back({panel.models[m].label, res});
    if (out.argmax_model < 0 || res.mean > out.max_risk) {
      out.max_risk = res.mean;
      out.max_std_error = res.std_error;
      out.argmax_model = static_cast<int>(m);
    }
  }
  return out;
}

RiskReport risk_report(const PeriodicSignal& signal, const NoisePanel& panel,
                       const WeightGrid& grid, double rho, long long n,
                       int replicates, std::uint64_t master_seed, int workers,
                       bool with_selected, bool with_per_gamma) {
  if (panel.models.empty()) throw std::invalid_argument("risk_report: empty panel");
  if (replicates < 2) throw std::invalid_argument("risk_report: replicates must be >= 2");

  std::vector<GammaView> gammas;
  std::vector<double> grid_tails;
  grid_tails.reserve(grid.members.size());
  for (const auto& g : grid.members) grid_tails.push_back(tail_term_for(g, signal));
  if (with_per_gamma) {
    gammas.reserve(grid.members.size());
    for (std::size_t i = 0; i < grid.members.size(); ++i) {
      gammas.push_back({&grid.members[i], grid_tails[i]});
    }
  }

  RiskReport report;
  report.n = n;
  report.rho = rho;
  report.replicates = replicates;
  report.master_seed = master_seed;
  report.signal_label = signal.label;

  std::vector<ModelPass> passes;
  passes.reserve(panel.models.size());
  for (std::size_t m = 0; m < panel.models.size(); ++m) {
    const std::uint64_t model_seed = mix_seed(master_seed, static_cast<std::uint64_t>(m));
    passes.push_back(run_model_pass(signal, panel.models[m], gammas, &grid,
                                    &grid_tails, rho, n, replicates, model_seed,
                                    workers, with_selected));
  }

  if (with_per_gamma) {
    report.per_gamma.resize(grid.members.size());
    for (std::size_t g = 0; g < grid.members.size(); ++g) {
      PerGammaRow& row = report.per_gamma[g];
      row.beta = grid.members[g].beta;
      row.t = grid.members[g].t;
      for (std::size_t m = 0; m < panel.models.size(); ++m) {
        McResult res = summarize(passes[m].per_gamma[g], signal.tail_bound);
        row.per_model.push_back(res);
        if (row.argmax_model < 0 || res.mean > row.mean) {
          row.mean = res.mean;
          row.std_error = res.std_error;
          row.argmax_model = static_cast<int>(m);
        }
      }
    }
  }

  if (with_selected) {
    std::vector<long long> counts(grid.members.size(), 0);
    for (std::size_t m = 0; m < panel.models.size(); ++m) {
      McResult res = summarize(passes[m].selected, signal.tail_bound);
      report.selected.per_model.push_back({panel.models[m].label, res});
      if (report.selected.argmax_model < 0 || res.mean > report.selected.max_risk) {
        report.selected.max_risk = res.mean;
        report.selected.max_std_error = res.std_error;
        report.selected.argmax_model = static_cast<int>(m);
      }
      for (int idx : passes[m].selected_member) {
        counts[static_cast<std::size_t>(idx)] += 1;
      }
    }
    for (std::size_t g = 0; g < counts.size(); ++g) {
      if (counts[g] > 0) {
        report.frequencies.push_back(
            {grid.members[g].beta, grid.members[g].t, counts[g]});
      }
    }
  }
  return report;
}

OracleCheckReport oracle_check(const PeriodicSignal& signal,
                               const NoisePanel& panel, const WeightGrid& grid,
                               double rho, long long n, int replicates,
                               std::uint64_t master_seed, int workers,
                               double slack_constant) {
  OracleCheckReport rep;
  rep.tables = risk_report(signal, panel, grid, rho, n, replicates, master_seed,
                           workers, /*with_selected=*/true, /*with_per_gamma=*/true);
  rep.coefficient = oracle_coefficient(rho);
  rep.lhs = rep.tables.selected.max_risk;

  double min_robust = 0.0;
  double min_se = 0.0;
  for (std::size_t g = 0; g < rep.tables.per_gamma.size(); ++g) {
    const auto& row = rep.tables.per_gamma[g];
    if (rep.best_gamma_index < 0 || row.mean < min_robust) {
      min_robust = row.mean;
      min_se = row.std_error;
      rep.best_gamma_index = static_cast<int>(g);
    }
  }
  rep.rhs_main = rep.coefficient * min_robust;
  rep.slack = rep.lhs - rep.rhs_main;
  rep.slack_allowance = slack_constant / static_cast<double>(n);
  const double se_lhs = rep.tables.selected.max_std_error;
  rep.combined_se = std::sqrt(se_lhs * se_lhs +
                              rep.coefficient * rep.coefficient * min_se * min_se);
  rep.consistent =
      rep.lhs <= rep.rhs_main + rep.slack_allowance + 3.0 * rep.combined_se;
  return rep;
}

std::vector<EfficiencyRow> efficiency_pilot_curve(
    int k, double r, double sigma_star, const std::vector<double>& n_list,
    int j_max) {
  if (j_max < 2) throw std::invalid_argument("efficiency_pilot_curve: j_max must be >= 2");
  std::vector<EfficiencyRow> rows;
  const double rstar = pinsker_constant(k, r, sigma_star);
  for (double n_real : n_list) {
    const long long n = static_cast<long long>(std::llround(n_real));
    const double eps = 1.0 / std::log(static_cast<double>(n) + 1.0);
    const WeightSequence gamma0 = oracle_weight_alpha0(k, r, sigma_star, n, eps);
    // Bias of the worst single-coordinate boundary signal; the ellipsoid sup
    // of the bias is attained on a single coordinate.
    double worst_bias = 0.0;
    for (int j = 1; j <= j_max; ++j) {
      const double g = gamma0.value(j);
      const double b = (1.0 - g) * (1.0 - g) * r / sobolev_weight(j, k);
      worst_bias = std::max(worst_bias, b);
    }
    const double risk =
        worst_bias + sigma_star * gamma0.sum_sq / static_cast<double>(n);
    EfficiencyRow row;
    row.n = static_cast<double>(n);
    row.ratio = std::pow(static_cast<double>(n),
                         2.0 * k / (2.0 * k + 1.0)) * risk / rstar;
    row.side = "pilot";
    rows.push_back(row);
  }
  return rows;
}

std::vector<EfficiencyRow> efficiency_mc_curve(
    const std::vector<PeriodicSignal>& family, const NoisePanel& panel,
    int k, double r, double rho, const std::vector<long long>& n_list,
    int replicates, std::uint64_t master_seed, int workers) {
  if (family.empty()) throw std::invalid_argument("efficiency_mc_curve: empty family");
  const double sigma_star = panel.models.front().sigma_star;
  const double rstar = pinsker_constant(k, r, sigma_star);
  std::vector<EfficiencyRow> rows;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const long long n = n_list[ni];
    const WeightGrid grid = weight_grid(n);
    double worst = 0.0;
    double worst_se = 0.0;
    bool first = true;
    for (std::size_t s = 0; s < family.size(); ++s) {
      const std::uint64_t seed =
          mix_seed(master_seed, (static_cast<std::uint64_t>(ni) << 20) ^ s);
      RobustResult rob = robust_risk(family[s], panel, EstimatorKind::kModelSelect,
                                     nullptr, &grid, rho, n, replicates, seed,
                                     workers);
      if (first || rob.max_risk > worst) {
        worst = rob.max_risk;
        worst_se = rob.max_std_error;
        first = false;
      }
    }
    EfficiencyRow row;
    row.n = static_cast<double>(n);
    row.ratio = std::pow(static_cast<double>(n), 2.0 * k / (2.0 * k + 1.0)) *
                worst / rstar;
    row.std_error = std::pow(static_cast<double>(n), 2.0 * k / (2.0 * k + 1.0)) *
                    worst_se / rstar;
    row.side = "upper";
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nprsim
