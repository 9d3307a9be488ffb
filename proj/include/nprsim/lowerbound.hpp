#ifndef NPRSIM_LOWERBOUND_HPP
#define NPRSIM_LOWERBOUND_HPP

#include <functional>
#include <vector>

namespace nprsim {

// --- mollifier and smoothed indicator ----------------------------------------

/// Normalized bump V(x) = c * exp(-1/(1-x^2)) on (-1,1), zero outside, with
/// c chosen so that the integral over [-1,1] is one.
double mollifier(double x);

/// The normalization constant c (cached after the first call).
double mollifier_constant();

/// Integral of V over [a,b] (clipped to [-1,1]); evaluated from a
/// precomputed antiderivative table, accurate to ~1e-12.
double mollifier_integral(double a, double b);

/// Smooth [0,1]-valued indicator of [-1+eta, 1-eta]:
///   I_eta(x) = eta^{-1} \int 1_{|u|<=1-eta} V((u-x)/eta) du.
/// Equals 1 on |x| <= 1-2eta and 0 on |x| >= 1.
double smoothed_indicator(double x, double eta);

/// Trigonometric basis on [-1,1]: e_1 = 1/sqrt(2); for j >= 2,
/// cos(pi*[j/2]*x) when j is even and sin(pi*[j/2]*x) when j is odd.
double half_basis_eval(int j, double x);

/// K_j(f) = \int_{-1}^{1} e_j^2(v) f(v) dv by direct quadrature
/// (absolute tolerance ~1e-9).
double K_functional(int j, const std::function<double(double)>& f);

// --- bandwidth, prior design --------------------------------------------------

/// Per-block frequency count rule N_n = scale * (ln n)^power; the default is
/// the ln^4 rule, overridable for exploration at desk-scale horizons.
struct NnRule {
  double power = 4.0;
  double scale = 1.0;
  double operator()(double n) const;
};

/// Bandwidth h = (upsilon*_eps)^(1/(2k+1)) * N_n * n^(-1/(2k+1)) with
/// upsilon*_eps = sigma* k pi^(2k) / ((1-eps) r 2^(2k+1) (k+1)(2k+1)).
/// Throws std::domain_error when h >= 1/4 (no valid block partition; the
/// caller's n is too small for the configured rule).
double bandwidth(int k, double r, double sigma_star, double eps, double n,
                 const NnRule& rule = {});

/// The parametric prior construction: M blocks of width 2h, N frequencies
/// per block, prior standard deviations t_j = sqrt(sigma* y*_j / (n h)) with
/// y*_j = N^k j^{-k} - 1.
struct PriorDesign {
  int k = 1;
  double r = 1.0;
  double sigma_star = 1.0;
  double eps = 0.1;
  double eta = 1e-3;
  double n = 0.0;
  double h = 0.0;
  long long N = 0;  // per-block frequency count, ceil(rule(n))
  long long M = 0;  // block count, floor(1/(2h)) - 1

  double y_star(long long j) const;
  double prior_sd(long long j) const;  // t_{m,j}; constant across blocks
};

PriorDesign make_prior_design(int k, double r, double sigma_star, double eps,
                              double eta, double n, const NnRule& rule = {});

// --- van Trees ---------------------------------------------------------------

/// sigma* B_j^2 / (fisher_energy + sigma* I_j); the Bayesian Cramer-Rao
/// bound for one coordinate of a linear white-noise model.
double van_trees_bound(double fisher_energy, double b_j, double prior_info,
                       double sigma_star);

/// Numeric lower bound for the Bayes risk of the prior design, plus its
/// eta -> 0 limit form:
///   bound      = (sigma*/(2 n h)) sum_j K_j^2(I_eta) y*_j / (K_j(I_eta^2) y*_j + 1)
///   limit_form = (sigma*/(2 n h)) sum_j y*_j / (y*_j + 1)
/// The normalized fields carry the extra n^(2k/(2k+1)) / R* factor used by
/// the convergence diagnostics.
struct BayesBound {
  double bound = 0.0;
  double limit_form = 0.0;
  double normalized_bound = 0.0;
  double normalized_limit = 0.0;
};

BayesBound bayes_lower_bound(const PriorDesign& design, double eta);

/// Pure-arithmetic check that the normalized limit form converges to
/// (1-eps)^(1/(2k+1)).
struct PinskerLimitRow {
  double n = 0.0;
  double ratio = 0.0;   // normalized limit form
  double target = 0.0;  // (1-eps)^(1/(2k+1))
  double gap = 0.0;     // |ratio - target|
};

std::vector<PinskerLimitRow> pinsker_limit_check(
    int k, double r, double sigma_star, double eps,
    const std::vector<double>& n_list, const NnRule& rule = {});

/// Radial projection onto the L2 ball of squared radius r.
std::vector<double> project_ball(const std::vector<double>& coeffs, double r);

}  // namespace nprsim

#endif
