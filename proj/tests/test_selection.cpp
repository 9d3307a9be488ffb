#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nprsim/errors.hpp"
#include "nprsim/rng.hpp"
#include "nprsim/selection.hpp"
#include "support.hpp"

using namespace nprsim;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralObservation obs_from(std::vector<double> theta_hat) {
  SpectralObservation o;
  o.n = static_cast<long long>(theta_hat.size());
  o.theta_hat = std::move(theta_hat);
  return o;
}

}  // namespace

TEST_CASE("sigma_hat sums the high-frequency tail") {
  CHECK(sigma_hat(obs_from({0.0, 0.0, 0.0, 0.0})) == 0.0);
  // n = 4, l = floor(sqrt(4)) + 1 = 3
  CHECK(sigma_hat(obs_from({1.0, 0.5, 0.2, 0.0})) ==
        doctest::Approx(0.04).epsilon(1e-14));
  // n = 1: l = 2 > n, empty sum
  CHECK(sigma_hat(obs_from({3.0})) == 0.0);
}

TEST_CASE("weight sequence matches the closed form") {
  // tau_1 = 6/pi^2
  const WeightSequence w = weight_sequence(1, 1.0, 1000);
  const double tau1 = 6.0 / (kPi * kPi);
  CHECK(tau1 == doctest::Approx(0.6079271).epsilon(1e-6));
  const double omega = std::cbrt(tau1 * 1000.0);
  CHECK(w.omega == doctest::Approx(omega).epsilon(1e-13));
  CHECK(w.j0 == 1);  // floor(8.4712 / (1 + ln 1000))
  CHECK(w.value(1) == 1.0);
  CHECK(w.value(4) == doctest::Approx(1.0 - 4.0 / omega).epsilon(1e-13));
  for (long long j = w.support_end() + 1; j < w.support_end() + 5; ++j) {
    CHECK(w.value(j) == 0.0);
  }
}

TEST_CASE("weight values live in [0,1] and are nonincreasing") {
  for (int beta : {1, 2, 3}) {
    for (double t : {0.2, 1.0, 4.0}) {
      const WeightSequence w = weight_sequence(beta, t, 500);
      double prev = 1.0;
      for (long long j = 1; j <= w.support_end() + 1; ++j) {
        const double g = w.value(j);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        CHECK(g <= prev + 1e-15);
        prev = g;
      }
    }
  }
}

TEST_CASE("default grid dimensions") {
  const WeightGrid g = weight_grid(1000);
  CHECK(g.eps == doctest::Approx(1.0 / std::log(1001.0)).epsilon(1e-14));
  CHECK(g.m == 47);
  CHECK(g.k_star == 2);
  CHECK(g.members.size() == 94);

  CHECK(weight_grid(3).k_star == 1);

  GridOverrides o;
  o.k_star = 1;
  o.eps = 0.5;
  const WeightGrid small = weight_grid(1000, o);
  CHECK(small.m == 4);
  CHECK(small.members.size() == 4);

  GridOverrides bad;
  bad.eps = 1.5;
  CHECK_THROWS_AS(weight_grid(1000, bad), config_error);
}

TEST_CASE("cost at pinned observations") {
  WeightSequence g11;
  g11.beta = 1;
  g11.t = 1.0;
  g11.omega = 2.0;
  g11.values = {1.0, 1.0};
  g11.sum_sq = 2.0;

  // sigma_hat = 0.04, theta_tilde = (0.99, 0.24, ...)
  const double c = cost(obs_from({1.0, 0.5, 0.2, 0.0}), g11, 0.1);
  CHECK(c == doctest::Approx(-1.208).epsilon(1e-12));

  // sigma_hat = 0 -> cost has no penalty and reduces to the two sums
  const double c0 = cost(obs_from({1.0, 0.5, 0.0, 0.0}), g11, 0.2);
  CHECK(c0 == doctest::Approx(-1.25).epsilon(1e-12));

  CHECK(cost(obs_from({0.0, 0.0, 0.0}), g11, 0.1) == 0.0);
  CHECK_THROWS_AS(cost(obs_from({1.0, 0.0}), g11, 0.5), std::invalid_argument);
}

TEST_CASE("cost reduces to the sigma-free form on sparse observations") {
  Rng rng(9, 1, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const long long n = 25;  // l = 6
    std::vector<double> th(n, 0.0);
    for (int j = 0; j < 5; ++j) th[j] = rng.normal();
    const SpectralObservation o = obs_from(th);
    const WeightSequence w = weight_sequence(1, 0.5 + rng.uniform(), n);
    double expect = 0.0;
    for (long long j = 1; j <= n; ++j) {
      const double g = w.value(j);
      const double v = o.theta_hat[j - 1];
      expect += g * g * v * v - 2.0 * g * v * v;
    }
    CHECK(cost(o, w, 0.15) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("selection tie-break and order independence") {
  const WeightGrid grid = weight_grid(200);
  SpectralObservation zero = obs_from(std::vector<double>(200, 0.0));
  const SelectionResult r = select(zero, grid, 0.1);
  CHECK(r.gamma_hat.beta == 1);
  CHECK(r.gamma_hat.t == doctest::Approx(grid.eps).epsilon(1e-14));
  CHECK(r.cost_value == 0.0);

  // shuffled evaluation reaches the same minimizer through the total order
  WeightGrid reversed = grid;
  std::reverse(reversed.members.begin(), reversed.members.end());
  Rng rng(31, 7, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> th(200);
    for (auto& v : th) v = 0.05 * rng.normal();
    th[1] += 0.4;
    th[4] += 0.2;
    const SpectralObservation o = obs_from(th);
    const SelectionResult a = select(o, grid, 0.05);
    const SelectionResult b = select(o, reversed, 0.05);
    CHECK(a.gamma_hat.beta == b.gamma_hat.beta);
    CHECK(a.gamma_hat.t == b.gamma_hat.t);
    CHECK(a.cost_value == b.cost_value);
  }
}

TEST_CASE("argmin is invariant under rescaling the observation") {
  const WeightGrid grid = weight_grid(150);
  Rng rng(77, 3, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> th(150);
    for (auto& v : th) v = 0.1 * rng.normal();
    th[0] += 0.8;
    th[2] += 0.3;
    const SelectionResult base = select(obs_from(th), grid, 0.1);
    for (double c : {0.1, 3.0, -2.0}) {
      std::vector<double> scaled(th.size());
      for (std::size_t i = 0; i < th.size(); ++i) scaled[i] = c * th[i];
      const SelectionResult s = select(obs_from(scaled), grid, 0.1);
      CHECK(s.gamma_hat.beta == base.gamma_hat.beta);
      CHECK(s.gamma_hat.t == base.gamma_hat.t);
    }
  }
}

TEST_CASE("singleton grid always wins") {
  WeightGrid g;
  g.k_star = 1;
  g.eps = 0.5;
  g.m = 1;
  g.members = {weight_sequence(1, 0.5, 100)};
  const SelectionResult r = select(obs_from(std::vector<double>(100, 0.2)), g, 0.1);
  CHECK(r.member_index == 0);
}

TEST_CASE("pilot weight alpha0") {
  const double eps = 1.0 / std::log(1001.0);
  const WeightSequence w = oracle_weight_alpha0(1, 1.0, 1.0, 1000, eps);
  CHECK_FALSE(w.clamped);
  CHECK(w.t == doctest::Approx(6.0 * eps).epsilon(1e-13));
  const double omega = std::cbrt((6.0 / (kPi * kPi)) * 6.0 * eps * 1000.0);
  CHECK(w.omega == doctest::Approx(omega).epsilon(1e-12));

  const WeightSequence clamped = oracle_weight_alpha0(1, 0.01, 1.0, 1000, eps);
  CHECK(clamped.clamped);
  CHECK(clamped.t == doctest::Approx(eps).epsilon(1e-14));
}
