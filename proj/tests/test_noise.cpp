#include <doctest.h>

#include <cmath>

#include "nprsim/noise.hpp"

using namespace nprsim;

namespace {
NoiseModel model(double rho1, double rho2, double lambda,
                 MarkLaw law = MarkLaw::kRademacher, double sigma_star = 1.0) {
  NoiseModel m;
  m.rho1 = rho1;
  m.rho2 = rho2;
  m.lambda = lambda;
  m.mark_law = law;
  m.sigma_star = sigma_star;
  return m;
}
}  // namespace

TEST_CASE("noise variance") {
  CHECK(noise_variance(model(1.0, 0.0, 0.0)) == 1.0);
  CHECK(noise_variance(model(1.0, 0.5, 2.0)) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(noise_variance(model(0.0, 1.0, 0.7)) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(noise_variance(gaussian_member(2.5)) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("fourth-moment bound") {
  CHECK(c2_bound(gaussian_member(1.0)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c2_bound(model(1.0, 0.5, 2.0, MarkLaw::kRademacher)) ==
        doctest::Approx(10.5).epsilon(1e-14));
  CHECK(c2_bound(model(0.0, 1.0, 1.0, MarkLaw::kStandardGaussian)) ==
        doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("family membership inequalities and margins") {
  // l_n = 100: rule with power 0 is a constant threshold
  const LnRule l100{100.0, 0.0};

  const MembershipVerdict q0 = family_membership(gaussian_member(1.0), 500, l100);
  CHECK(q0.pass);
  CHECK(q0.budget_margin == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q0.jump_scale_margin == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(q0.family_margin == doctest::Approx(56.0).epsilon(1e-12));  // 100 - 4*(1+10)

  // rho2^2 = 20 > sqrt(100)
  NoiseModel jumpy = model(0.0, std::sqrt(20.0), 0.05, MarkLaw::kRademacher, 1.0);
  const MembershipVerdict v2 = family_membership(jumpy, 500, l100);
  CHECK_FALSE(v2.jump_scale_ok);
  CHECK_FALSE(v2.pass);

  // l_n = 4: 4*(1 + 2*1) = 12 > 4 fails the family inequality
  const LnRule l4{4.0, 0.0};
  const MembershipVerdict v3 = family_membership(gaussian_member(1.0), 500, l4);
  CHECK_FALSE(v3.family_ok);
  CHECK_FALSE(v3.pass);
}

TEST_CASE("membership is monotone in l_n") {
  const NoiseModel m = model(0.5, 0.8, 1.0, MarkLaw::kStandardGaussian, 1.0);
  bool passed = false;
  for (double scale = 1.0; scale <= 4096.0; scale *= 2.0) {
    const MembershipVerdict v = family_membership(m, 1000, LnRule{scale, 1.0});
    if (passed) CHECK(v.pass);  // enlarging l_n never flips pass -> fail
    passed = passed || v.pass;
  }
  CHECK(passed);  // large enough thresholds accept this model
}

TEST_CASE("default panel contains Q0 and passes its own rule") {
  const NoisePanel p = default_panel(1.0);
  CHECK(p.contains_gaussian_member());
  for (long long n : {500LL, 2000LL, 8000LL}) {
    for (const auto& m : p.models) {
      CHECK(family_membership(m, n, p.l_n_rule).pass);
    }
  }
}
