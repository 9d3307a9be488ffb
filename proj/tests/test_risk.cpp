#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nprsim/risk.hpp"
#include "nprsim/rng.hpp"
#include "support.hpp"

using namespace nprsim;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodicSignal finite_signal(std::vector<double> coeffs) {
  PeriodicSignal s;
  s.coeffs = std::move(coeffs);
  s.label = "test";
  return s;
}

WeightSequence plateau_gamma(int len) {
  WeightSequence g;
  g.beta = 1;
  g.t = 1.0;
  g.omega = len;
  g.j0 = len;
  g.values.assign(len, 1.0);
  g.sum_sq = len;
  return g;
}

}  // namespace

TEST_CASE("mise via parseval") {
  const PeriodicSignal s = finite_signal({1.0, 0.2});
  CHECK(mise({1.0, 0.2}, s).upper() == 0.0);
  CHECK(mise({}, s).upper() == doctest::Approx(1.04).epsilon(1e-14));
  CHECK(mise({0.9, 0.0}, s).upper() == doctest::Approx(0.05).epsilon(1e-14));

  PeriodicSignal tailed = s;
  tailed.tail_bound = 0.01;
  const MiseValue v = mise({0.9, 0.0}, tailed);
  CHECK(v.lower == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(v.upper() == doctest::Approx(0.06).epsilon(1e-14));
}

TEST_CASE("exact gaussian risk") {
  const PeriodicSignal s = finite_signal({1.0, 0.5});
  // gamma identically zero: full signal energy
  CHECK(gaussian_risk_exact(s, std::vector<double>{}, 1.0, 100) ==
        doctest::Approx(1.25).epsilon(1e-14));
  // plateau on the support: pure variance sigma* J0 / n
  CHECK(gaussian_risk_exact(s, plateau_gamma(2), 1.0, 100) ==
        doctest::Approx(2.0 / 100.0).epsilon(1e-13));
  // mixed filter
  CHECK(gaussian_risk_exact(s, std::vector<double>{1.0, 0.5}, 1.0, 100) ==
        doctest::Approx(0.075).epsilon(1e-13));
}

TEST_CASE("pinsker constant and scaling laws") {
  const double r111 = pinsker_constant(1, 1.0, 1.0);
  // 3^(1/3) * (1/(2 pi))^(2/3)
  const double expected =
      std::pow(3.0, 1.0 / 3.0) * std::pow(1.0 / (2.0 * kPi), 2.0 / 3.0);
  CHECK(r111 == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.42353).epsilon(1e-4));

  for (int k = 1; k <= 4; ++k) {
    const double base = pinsker_constant(k, 0.7, 1.3);
    const double e = 2.0 * k + 1.0;
    CHECK(pinsker_constant(k, 16.0 * 0.7, 1.3) / base ==
          doctest::Approx(std::pow(16.0, 1.0 / e)).epsilon(1e-12));
    CHECK(pinsker_constant(k, 0.7, 4.0 * 1.3) / base ==
          doctest::Approx(std::pow(4.0, 2.0 * k / e)).epsilon(1e-12));
  }
}

TEST_CASE("oracle coefficient") {
  CHECK(oracle_coefficient(0.1) ==
        doctest::Approx(1.8285714285714285714).epsilon(1e-13));
  double prev = oracle_coefficient(0.33);
  for (double rho = 0.30; rho > 0.001; rho -= 0.01) {
    const double c = oracle_coefficient(rho);
    CHECK(c < prev);
    CHECK(c > 1.0);
    prev = c;
  }
  CHECK(oracle_coefficient(1e-9) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(oracle_coefficient(0.4), std::invalid_argument);
}

TEST_CASE("upper bound terms recombine to the pinsker constant") {
  const UpperBoundTerms t11 = upper_bound_terms(1, 1.0, 1.0);
  const double tau1 = 6.0 / (kPi * kPi);
  CHECK(t11.upsilon1 ==
        doctest::Approx(1.0 / (kPi * kPi * std::pow(tau1, 2.0 / 3.0)))
            .epsilon(1e-13));
  CHECK(t11.upsilon2 ==
        doctest::Approx(2.0 * std::pow(tau1, 1.0 / 3.0) / 6.0).epsilon(1e-13));
  for (int k = 1; k <= 6; ++k) {
    for (double r : {0.1, 1.0, 10.0}) {
      for (double sig : {0.5, 1.0, 2.0}) {
        const UpperBoundTerms t = upper_bound_terms(k, r, sig);
        CHECK(std::fabs(t.reconstruction - t.pinsker) <= 1e-12 * t.pinsker);
      }
    }
  }
}

TEST_CASE("monte carlo risk is exact for noiseless data") {
  const PeriodicSignal s = finite_signal({0.5, 0.2});
  NoiseModel silent;
  silent.rho1 = 0.0;
  silent.rho2 = 0.0;
  silent.lambda = 0.0;
  silent.sigma_star = 1.0;
  const WeightSequence g = plateau_gamma(2);
  const McResult res = mc_risk(s, silent, EstimatorKind::kFixedGamma, &g,
                               nullptr, 0.1, 50, 100, 42, 1);
  CHECK(res.mean == 0.0);
  CHECK(res.std_error == 0.0);
}

TEST_CASE("monte carlo risk matches the exact gaussian formula") {
  const PeriodicSignal s = finite_signal({0.6, 0.3, 0.1});
  const WeightGrid grid = weight_grid(500);
  const NoiseModel q0 = gaussian_member(1.0);
  for (int gi : {0, 10, 40}) {
    const WeightSequence& g = grid.members[gi];
    const McResult res = mc_risk(s, q0, EstimatorKind::kFixedGamma, &g, nullptr,
                                 0.1, 500, 2000, 1234 + gi, 1);
    const double exact = gaussian_risk_exact(s, g, 1.0, 500);
    CHECK(std::fabs(res.mean - exact) <= 3.0 * res.std_error);
  }
}

TEST_CASE("risk estimates are within 3 SE in at least 99 of 100 meta runs") {
  const PeriodicSignal s = finite_signal({0.4, 0.2});
  const NoiseModel q0 = gaussian_member(1.0);
  const WeightSequence g = weight_sequence(1, 1.0, 50);
  const double exact = gaussian_risk_exact(s, g, 1.0, 50);
  int hits = 0;
  for (int meta = 0; meta < 100; ++meta) {
    const McResult res = mc_risk(s, q0, EstimatorKind::kFixedGamma, &g, nullptr,
                                 0.1, 50, 200, mix_seed(909, meta), 1);
    if (std::fabs(res.mean - exact) <= 3.0 * res.std_error) ++hits;
  }
  CHECK(hits >= 99);
}

TEST_CASE("worker count never changes the result") {
  const PeriodicSignal s = finite_signal({0.5, -0.2, 0.1});
  NoiseModel mixed;
  mixed.rho1 = std::sqrt(0.5);
  mixed.rho2 = 0.5;
  mixed.lambda = 2.0;
  mixed.sigma_star = 1.0;
  const WeightGrid grid = weight_grid(100);
  for (EstimatorKind kind :
       {EstimatorKind::kFixedGamma, EstimatorKind::kModelSelect}) {
    const WeightSequence g = grid.members[3];
    const McResult a = mc_risk(s, mixed, kind, &g, &grid, 0.1, 100, 60, 5150, 1);
    const McResult b = mc_risk(s, mixed, kind, &g, &grid, 0.1, 100, 60, 5150, 8);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
  }
}

TEST_CASE("robust risk properties") {
  const PeriodicSignal s = finite_signal({0.5, 0.2});
  const WeightSequence g = weight_sequence(1, 1.0, 200);
  SUBCASE("singleton panel equals the member risk") {
    NoisePanel single;
    single.models = {gaussian_member(1.0)};
    const RobustResult rob = robust_risk(s, single, EstimatorKind::kFixedGamma,
                                         &g, nullptr, 0.1, 200, 400, 2024, 1);
    const McResult direct =
        mc_risk(s, single.models[0], EstimatorKind::kFixedGamma, &g, nullptr,
                0.1, 200, 400, mix_seed(2024, 0), 1);
    CHECK(rob.max_risk == direct.mean);
    CHECK(rob.argmax_model == 0);
    CHECK(rob.max_risk >= direct.mean);  // max dominates a member, exactly
  }
  SUBCASE("equal second moments give equal risks up to noise") {
    NoisePanel p;
    p.models = {gaussian_member(1.0)};
    NoiseModel jump;
    jump.rho1 = 0.0;
    jump.rho2 = 1.0;
    jump.lambda = 1.0;
    jump.sigma_star = 1.0;
    jump.label = "jump";
    p.models.push_back(jump);
    const RobustResult rob = robust_risk(s, p, EstimatorKind::kFixedGamma, &g,
                                         nullptr, 0.1, 200, 1500, 77, 1);
    const double a = rob.per_model[0].result.mean;
    const double b = rob.per_model[1].result.mean;
    const double joint_se =
        std::sqrt(rob.per_model[0].result.std_error * rob.per_model[0].result.std_error +
                  rob.per_model[1].result.std_error * rob.per_model[1].result.std_error);
    CHECK(std::fabs(a - b) <= 3.0 * joint_se);
  }
  SUBCASE("smaller variance budget gives no larger risk") {
    NoisePanel p;
    p.models = {gaussian_member(1.0)};
    NoiseModel weak;
    weak.rho1 = std::sqrt(0.5);  // sigma(Q) = 0.5 < sigma* = 1
    weak.rho2 = 0.0;
    weak.lambda = 0.0;
    weak.sigma_star = 1.0;
    weak.label = "weak";
    p.models.push_back(weak);
    const RobustResult rob = robust_risk(s, p, EstimatorKind::kFixedGamma, &g,
                                         nullptr, 0.1, 200, 1500, 88, 1);
    const double joint_se =
        std::sqrt(rob.per_model[0].result.std_error * rob.per_model[0].result.std_error +
                  rob.per_model[1].result.std_error * rob.per_model[1].result.std_error);
    CHECK(rob.per_model[1].result.mean <=
          rob.per_model[0].result.mean + 3.0 * joint_se);
    CHECK(rob.argmax_model == 0);
  }
}

TEST_CASE("selected filter lands near the pilot cutoff") {
  // boundary signal, k = 1, r = 1, Q0, n = 500: the selected omega should be
  // within a factor 2 of the pilot omega in at least 80% of replicates.
  SignalSpec spec;
  spec.generator = BoundaryEllipsoidSpec{1, 1.0, {2}, {}};
  const PeriodicSignal s = make_test_signal(spec);
  const long long n = 500;
  const WeightGrid grid = weight_grid(n);
  const WeightSequence pilot = oracle_weight_alpha0(1, 1.0, 1.0, n, grid.eps);
  const NoiseModel q0 = gaussian_member(1.0);
  int close = 0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) {
    const SpectralObservation obs = observe(s, q0, n, mix_seed(31337, i));
    const SelectionResult sel = select(obs, grid, 0.05);
    const double ratio = sel.gamma_hat.omega / pilot.omega;
    if (ratio >= 0.5 && ratio <= 2.0) ++close;
  }
  CHECK(close >= 160);
}

TEST_CASE("analytic pilot ratio stays in a sane band") {
  // single boundary signal at j = 2; value must land in (0, 1.2) at n = 1e6
  SignalSpec spec;
  spec.generator = BoundaryEllipsoidSpec{1, 1.0, {2}, {}};
  const PeriodicSignal s = make_test_signal(spec);
  const long long n = 1000000;
  const double eps = 1.0 / std::log(static_cast<double>(n) + 1.0);
  const WeightSequence g0 = oracle_weight_alpha0(1, 1.0, 1.0, n, eps);
  const double risk = gaussian_risk_exact(s, g0, 1.0, n);
  const double ratio =
      std::pow(static_cast<double>(n), 2.0 / 3.0) * risk / pinsker_constant(1, 1.0, 1.0);
  CHECK(ratio > 0.0);
  CHECK(ratio < 1.2);

  // family-maximized ratios are finite and positive for a spread of (k, r)
  for (int k : {1, 2, 3}) {
    for (double r : {0.5, 1.0, 4.0}) {
      const auto rows = efficiency_pilot_curve(k, r, 1.0, {1e4, 1e5}, 64);
      for (const auto& row : rows) {
        CHECK(row.ratio > 0.0);
        CHECK(std::isfinite(row.ratio));
      }
    }
  }
}

TEST_CASE("oracle check on a noiseless panel is consistent") {
  const PeriodicSignal s = finite_signal({0.5, 0.2});
  NoisePanel silent;
  NoiseModel m;
  m.rho1 = 0.0;
  m.rho2 = 0.0;
  m.lambda = 0.0;
  m.sigma_star = 1.0;
  m.label = "silent";
  silent.models = {m};
  const WeightGrid grid = weight_grid(100);
  const OracleCheckReport rep =
      oracle_check(s, silent, grid, 0.1, 100, 50, 7, 1, 10.0);
  CHECK(rep.consistent);
  CHECK(rep.coefficient == doctest::Approx(oracle_coefficient(0.1)).epsilon(1e-15));
}
