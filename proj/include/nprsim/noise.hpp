#ifndef NPRSIM_NOISE_HPP
#define NPRSIM_NOISE_HPP

#include <cmath>
#include <string>
#include <vector>

namespace nprsim {

/// Law of the jump marks Y_j; both choices are standardized (mean 0,
/// variance 1) with finite fourth moment.
enum class MarkLaw { kRademacher, kStandardGaussian };

inline double mark_fourth_moment(MarkLaw law) {
  return law == MarkLaw::kRademacher ? 1.0 : 3.0;
}

/// Semimartingale noise: Brownian scale rho1, compound-Poisson jump scale
/// rho2 with intensity lambda (jumps per unit time), under a shared variance
/// budget sigma_star.
struct NoiseModel {
  double rho1 = 1.0;
  double rho2 = 0.0;
  double lambda = 0.0;
  MarkLaw mark_law = MarkLaw::kRademacher;
  double sigma_star = 1.0;
  std::string label;

  bool has_jumps() const { return rho2 != 0.0 && lambda > 0.0; }
};

/// The pure-Gaussian member with full budget: rho1 = sqrt(sigma_star).
NoiseModel gaussian_member(double sigma_star);

/// sigma(Q) = rho1^2 + rho2^2 * lambda.
double noise_variance(const NoiseModel& model);

/// Fourth-moment bound 4*sigma(Q)*(sigma(Q) + rho2^2 * E Y^4). The
/// first-moment bound for this family is identically zero.
double c2_bound(const NoiseModel& model);

/// A slowly increasing threshold sequence l_n = scale * (1 + ln n)^power.
struct LnRule {
  double scale = 1.0;
  double power = 1.0;
  double operator()(double n) const {
    return scale * std::pow(1.0 + std::log(n), power);
  }
};

/// Outcome of the three membership inequalities for one model at horizon n:
///   (i)   rho1^2 + rho2^2*lambda <= sigma_star
///   (ii)  rho2^2 <= sqrt(l_n)
///   (iii) 4*sigma_star*(sigma_star + sqrt(l_n)*E Y^4) <= l_n
/// Failures are verdicts, not errors; each margin is RHS - LHS.
struct MembershipVerdict {
  bool pass = false;
  bool budget_ok = false;
  bool jump_scale_ok = false;
  bool family_ok = false;
  double budget_margin = 0.0;
  double jump_scale_margin = 0.0;
  double family_margin = 0.0;
  double l_n = 0.0;
};

MembershipVerdict family_membership(const NoiseModel& model, long long n,
                                    const LnRule& rule);

/// A finite stress panel sharing one sigma_star; robust risks below maximize
/// over its members. Valid panels always contain the pure-Gaussian member.
struct NoisePanel {
  std::vector<NoiseModel> models;
  LnRule l_n_rule;

  bool contains_gaussian_member() const;
};

/// Default three-member panel: pure Gaussian, an even Brownian/jump split,
/// and a pure-jump model, all at full budget with Rademacher marks.
NoisePanel default_panel(double sigma_star);

}  // namespace nprsim

#endif
