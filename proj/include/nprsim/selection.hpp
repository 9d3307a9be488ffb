#ifndef NPRSIM_SELECTION_HPP
#define NPRSIM_SELECTION_HPP

#include <optional>
#include <vector>

#include "nprsim/spectral.hpp"

namespace nprsim {

/// Shrinkage filter gamma_alpha indexed by alpha = (beta, t):
///   gamma(j) = 1                    for 1 <= j <= j0,
///   gamma(j) = 1 - (j/omega)^beta   for j0 < j <= omega,
///   gamma(j) = 0                    for j > omega,
/// with omega = (tau_beta * t * n)^(1/(2beta+1)),
/// tau_beta = (beta+1)(2beta+1)/(pi^(2beta) beta) and
/// j0 = floor(omega / (1 + ln n)).
struct WeightSequence {
  int beta = 1;
  double t = 0.0;
  double omega = 0.0;
  long long j0 = 0;
  std::vector<double> values;  // gamma(1..floor(omega)); zero beyond
  double sum_sq = 0.0;         // |gamma|^2

  long long support_end() const { return static_cast<long long>(values.size()); }
  double value(long long j) const {
    return (j >= 1 && j <= support_end()) ? values[static_cast<std::size_t>(j - 1)]
                                          : 0.0;
  }
  bool clamped = false;  // set by oracle_weight_alpha0 when t0 hit the floor
};

WeightSequence weight_sequence(int beta, double t, long long n);

/// The finite candidate set Gamma over the grid {1..k*} x {eps, 2eps, .., m*eps}
/// with m = floor(1/eps^2). Defaults: eps = 1/ln(n+1),
/// k* = max(1, floor(sqrt(ln(n+1)))).
struct GridOverrides {
  std::optional<double> eps;
  std::optional<int> k_star;
};

struct WeightGrid {
  int k_star = 0;
  double eps = 0.0;
  int m = 0;
  std::vector<WeightSequence> members;  // ordered by (beta asc, t asc)
};

WeightGrid weight_grid(long long n, const GridOverrides& overrides = {});

/// Variance proxy sigma_hat = sum_{j=l}^{n} theta_hat_j^2 with
/// l = floor(sqrt(n)) + 1; zero when l > n.
double sigma_hat(const SpectralObservation& obs);

/// Cost J(gamma) = sum gamma^2 theta_hat^2 - 2 sum gamma * theta_tilde
///               + rho * sigma_hat * |gamma|^2 / n,
/// where theta_tilde_j = theta_hat_j^2 - sigma_hat/n. Requires rho in (0,1/3).
double cost(const SpectralObservation& obs, const WeightSequence& gamma,
            double rho);

struct SelectionResult {
  WeightSequence gamma_hat;
  int member_index = -1;  // position in grid.members
  double cost_value = 0.0;
  std::vector<double> estimate_coeffs;  // gamma_hat(j) * theta_hat_j
  double sigma_hat = 0.0;
  double rho = 0.0;
};

/// Evaluates the cost of every grid member and returns the minimizer; ties
/// break to the smallest (beta, t), independent of evaluation order.
SelectionResult select(const SpectralObservation& obs, const WeightGrid& grid,
                       double rho);

/// Smoothness-aware pilot weight gamma_0 = gamma_(k, t0) with
/// t0 = floor((r/sigma_star)/eps) * eps, clamped up to eps when it would
/// otherwise vanish (the verdict is recorded in `clamped`).
WeightSequence oracle_weight_alpha0(int k, double r, double sigma_star,
                                    long long n, double eps);

/// Default penalty weight rho_n = 1/(3 + ln n); every acceptance experiment
/// passes rho explicitly, this is only a convenience for interactive runs.
double default_rho(long long n);

}  // namespace nprsim

#endif
