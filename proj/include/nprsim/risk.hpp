#ifndef NPRSIM_RISK_HPP
#define NPRSIM_RISK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nprsim/noise.hpp"
#include "nprsim/selection.hpp"
#include "nprsim/signal.hpp"
#include "nprsim/spectral.hpp"

namespace nprsim {

/// Squared L2 distance between an estimate and the truth via Parseval. When
/// the signal carries a nonzero tail bound the value is an interval
/// [lower, lower + tail]; finite signals collapse it to a point.
struct MiseValue {
  double lower = 0.0;
  double tail = 0.0;
  double upper() const { return lower + tail; }
};

MiseValue mise(const std::vector<double>& estimate_coeffs,
               const PeriodicSignal& signal);

/// Exact risk under the pure-Gaussian member:
///   sum_j (1 - gamma(j))^2 theta_j^2 + (sigma_star/n) * |gamma|^2
/// (+ the signal tail, which the filter cannot touch).
double gaussian_risk_exact(const PeriodicSignal& signal,
                           const WeightSequence& gamma, double sigma_star,
                           long long n);
/// Overload for an explicit weight vector (zero beyond its length).
double gaussian_risk_exact(const PeriodicSignal& signal,
                           const std::vector<double>& gamma_values,
                           double sigma_star, long long n);

/// Pinsker constant
///   R*_{k} = ((2k+1) r)^(1/(2k+1)) * (sigma_star k / ((k+1) pi))^(2k/(2k+1)).
double pinsker_constant(int k, double r, double sigma_star);

/// Oracle-inequality coefficient (1 + 3 rho - 2 rho^2) / (1 - 3 rho).
double oracle_coefficient(double rho);

/// Constants of the bias/variance split of the pilot-weight risk:
///   Upsilon1* = r^(1/(2k+1)) / (pi^(2k) tau_k^(2k/(2k+1)))
///   Upsilon2* = 2 tau_k^(1/(2k+1)) k^2 / ((k+1)(2k+1))
/// recombining as sigma^(2k/(2k+1)) U1 + sigma (r/sigma)^(1/(2k+1)) U2 = R*.
struct UpperBoundTerms {
  double upsilon1 = 0.0;
  double upsilon2 = 0.0;
  double reconstruction = 0.0;  // left-hand side of the identity above
  double pinsker = 0.0;         // R*_{k}
};
UpperBoundTerms upper_bound_terms(int k, double r, double sigma_star);

// --- Monte Carlo engine ------------------------------------------------------

enum class EstimatorKind { kFixedGamma, kModelSelect };

struct McResult {
  double mean = 0.0;       // mean MISE (tail-adjusted upper value)
  double std_error = 0.0;  // sample sd / sqrt(replicates)
  int replicates = 0;
};

struct SelectionFrequency {
  int beta = 0;
  double t = 0.0;
  long long count = 0;
};

struct McRiskExtras {
  std::vector<SelectionFrequency> frequencies;  // model_select only
  double mean_selected_omega = 0.0;
};

/// Seeded Monte Carlo risk of one estimator under one noise model. The
/// result is a pure function of the arguments; the worker count changes
/// wall time only.
McResult mc_risk(const PeriodicSignal& signal, const NoiseModel& model,
                 EstimatorKind kind, const WeightSequence* fixed_gamma,
                 const WeightGrid* grid, double rho, long long n,
                 int replicates, std::uint64_t master_seed, int workers,
                 McRiskExtras* extras = nullptr);

struct RobustEntry {
  std::string model_label;
  McResult result;
};

struct RobustResult {
  double max_risk = 0.0;
  double max_std_error = 0.0;
  int argmax_model = -1;
  std::vector<RobustEntry> per_model;
};

RobustResult robust_risk(const PeriodicSignal& signal, const NoisePanel& panel,
                         EstimatorKind kind, const WeightSequence* fixed_gamma,
                         const WeightGrid* grid, double rho, long long n,
                         int replicates, std::uint64_t master_seed, int workers);

// --- joint tables (one simulation pass feeds selection and every fixed
//     filter; panel members use common replicate seeds derived per model) ----

struct PerGammaRow {
  int beta = 0;
  double t = 0.0;
  double mean = 0.0;       // robust (max over panel) mean risk
  double std_error = 0.0;  // SE of the max-attaining member
  int argmax_model = -1;
  std::vector<McResult> per_model;
};

struct RiskReport {
  std::vector<PerGammaRow> per_gamma;
  RobustResult selected;                          // robust risk of S_hat_*
  std::vector<SelectionFrequency> frequencies;    // aggregated over panel
  long long n = 0;
  double sigma_star = 0.0;
  double rho = 0.0;
  int replicates = 0;
  std::uint64_t master_seed = 0;
  std::string signal_label;
};

RiskReport risk_report(const PeriodicSignal& signal, const NoisePanel& panel,
                       const WeightGrid& grid, double rho, long long n,
                       int replicates, std::uint64_t master_seed, int workers,
                       bool with_selected, bool with_per_gamma);

// --- oracle-inequality consistency check -------------------------------------

struct OracleCheckReport {
  double lhs = 0.0;        // robust risk of the selected estimator
  double rhs_main = 0.0;   // coefficient(rho) * min_Gamma robust fixed risk
  double slack = 0.0;      // lhs - rhs_main
  double slack_allowance = 0.0;  // C / n
  double combined_se = 0.0;
  double coefficient = 0.0;
  bool consistent = false;
  int best_gamma_index = -1;
  RiskReport tables;
};

/// Verdict is "consistent" iff
///   lhs <= rhs_main + slack_allowance + 3 * combined_se,
/// with slack_allowance = slack_constant / n (default 10 * sigma_star).
OracleCheckReport oracle_check(const PeriodicSignal& signal,
                               const NoisePanel& panel, const WeightGrid& grid,
                               double rho, long long n, int replicates,
                               std::uint64_t master_seed, int workers,
                               double slack_constant);

// --- efficiency against the Pinsker constant ---------------------------------

struct EfficiencyRow {
  double n = 0.0;
  double ratio = 0.0;
  std::string side;  // "pilot" or "upper"
  double std_error = 0.0;  // zero on the analytic side
};

/// Analytic pilot-weight ratios: for each n, the maximum over the
/// single-coordinate boundary family {theta_j = sqrt(r/a_j), 2 <= j <= j_max}
/// of n^(2k/(2k+1)) * gaussian_risk_exact(gamma_0) / R*.
std::vector<EfficiencyRow> efficiency_pilot_curve(
    int k, double r, double sigma_star, const std::vector<double>& n_list,
    int j_max);

/// Monte Carlo selected-estimator ratios over a configured signal family.
std::vector<EfficiencyRow> efficiency_mc_curve(
    const std::vector<PeriodicSignal>& family, const NoisePanel& panel,
    int k, double r, double rho, const std::vector<long long>& n_list,
    int replicates, std::uint64_t master_seed, int workers);

}  // namespace nprsim

#endif
