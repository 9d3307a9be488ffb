#include "nprsim/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nprsim/rng.hpp"

namespace nprsim {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

JumpSet draw_jumps(const NoiseModel& model, long long n, std::uint64_t seed) {
  JumpSet jumps;
  if (!model.has_jumps()) return jumps;
  Rng rng(seed, rng_stream::kJumps, 0);
  const double horizon = static_cast<double>(n);
  const std::size_t expected =
      static_cast<std::size_t>(model.lambda * horizon * 1.1) + 16;
  jumps.positions.reserve(expected);
  jumps.marks.reserve(expected);
  double t = rng.exponential(model.lambda);
  while (t <= horizon) {
    double pos = t - std::floor(t);  // phi_j is 1-periodic
    jumps.positions.push_back(pos);
    if (model.mark_law == MarkLaw::kRademacher) {
      jumps.marks.push_back(rng.uniform() < 0.5 ? -1.0 : 1.0);
    } else {
      jumps.marks.push_back(rng.normal());
    }
    t += rng.exponential(model.lambda);
  }
  return jumps;
}

void add_jump_coordinates(const JumpSet& jumps, double rho2, long long n,
                          std::vector<double>& xi) {
  const std::size_t J = xi.size();
  if (J == 0 || jumps.positions.empty()) return;
  const std::size_t mmax = J / 2;
  const double scale = rho2 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < jumps.positions.size(); ++k) {
    const double y = scale * jumps.marks[k];
    xi[0] += y;  // phi_1 == 1
    if (mmax == 0) continue;
    const double ang = kTwoPi * jumps.positions[k];
    const double c1 = std::cos(ang);
    const double s1 = std::sin(ang);
    // Rotate through the harmonics instead of calling sincos per coordinate.
    double c = c1;
    double s = s1;
    for (std::size_t m = 1; m <= mmax; ++m) {
      const std::size_t even_idx = 2 * m - 1;  // coordinate j = 2m
      xi[even_idx] += y * kSqrt2 * c;
      const std::size_t odd_idx = 2 * m;  // coordinate j = 2m + 1
      if (odd_idx < J) xi[odd_idx] += y * kSqrt2 * s;
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
  }
}

std::vector<double> simulate_spectral_noise(const NoiseModel& model,
                                            long long n, long long J,
                                            std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate_spectral_noise: n must be >= 1");
  if (J < 1 || J > n)
    throw std::invalid_argument("simulate_spectral_noise: need 1 <= J <= n");
  std::vector<double> xi(static_cast<std::size_t>(J), 0.0);
  if (model.rho1 != 0.0) {
    Rng rng(seed, rng_stream::kSpectralGauss, 0);
    for (auto& v : xi) v = model.rho1 * rng.normal();
  }
  if (model.has_jumps()) {
    add_jump_coordinates(draw_jumps(model, n, seed), model.rho2, n, xi);
  }
  return xi;
}

std::vector<double> simulate_path_integrals(const NoiseModel& model,
                                            long long n,
                                            const std::vector<int>& indices,
                                            double dt, std::uint64_t seed) {
  if (dt <= 0.0) throw std::invalid_argument("simulate_path_integrals: dt must be > 0");
  if (dt > 0.01)
    throw std::invalid_argument("simulate_path_integrals: dt must be <= 0.01");
  int jmax = 0;
  for (int j : indices) {
    if (j < 1) throw std::invalid_argument("simulate_path_integrals: index must be >= 1");
    jmax = std::max(jmax, j);
  }
  const double horizon = static_cast<double>(n);
  const long long steps = std::llround(horizon / dt);
  const double step = horizon / static_cast<double>(steps);
  const double sqrt_n = std::sqrt(horizon);

  std::vector<double> acc(indices.size(), 0.0);
  if (model.rho1 != 0.0) {
    Rng rng(seed, rng_stream::kPathBrownian, 0);
    const double w_scale = model.rho1 * std::sqrt(step);
    for (long long i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) * step;
      const double x = t - std::floor(t);
      const double dw = w_scale * rng.normal();
      for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        acc[idx] += basis_eval(indices[idx], x) * dw;
      }
    }
  }
  std::vector<double> xi(indices.size(), 0.0);
  for (std::size_t idx = 0; idx < indices.size(); ++idx) xi[idx] = acc[idx] / sqrt_n;

  if (model.has_jumps() && jmax >= 1) {
    std::vector<double> jump_xi(static_cast<std::size_t>(jmax), 0.0);
    add_jump_coordinates(draw_jumps(model, n, seed), model.rho2, n, jump_xi);
    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
      xi[idx] += jump_xi[static_cast<std::size_t>(indices[idx] - 1)];
    }
  }
  return xi;
}

SpectralObservation observe(const PeriodicSignal& signal,
                            const NoiseModel& model, long long n,
                            std::uint64_t seed) {
  if (static_cast<long long>(signal.coeffs.size()) > n) {
    throw std::invalid_argument("observe: signal has more coefficients than n");
  }
  SpectralObservation obs;
  obs.n = n;
  obs.seed = seed;
  obs.theta_hat = simulate_spectral_noise(model, n, n, seed);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : obs.theta_hat) v *= inv_sqrt_n;
  for (std::size_t j = 0; j < signal.coeffs.size(); ++j) {
    obs.theta_hat[j] += signal.coeffs[j];
  }
  return obs;
}

}  // namespace nprsim
