#ifndef NPRSIM_SPECTRAL_HPP
#define NPRSIM_SPECTRAL_HPP

#include <cstdint>
#include <vector>

#include "nprsim/noise.hpp"
#include "nprsim/signal.hpp"

namespace nprsim {

/// One realization of the compound-Poisson jump component over [0,n]:
/// arrival positions reduced mod 1 (the basis is 1-periodic) and the
/// standardized marks, in arrival order.
struct JumpSet {
  std::vector<double> positions;  // tau_k mod 1
  std::vector<double> marks;      // Y_k
};

/// Draws the jump realization for one replicate. Both simulators below use
/// this with the same stream so their jump parts coincide exactly.
JumpSet draw_jumps(const NoiseModel& model, long long n, std::uint64_t seed);

/// Adds the jump contribution (rho2/sqrt(n)) * sum_k phi_j(u_k) Y_k to
/// xi[0..J-1] (coordinate j stored at xi[j-1]). Shared between the spectral
/// and path simulators so that pure-jump outputs are bit-identical.
void add_jump_coordinates(const JumpSet& jumps, double rho2, long long n,
                          std::vector<double>& xi);

/// Frequency-domain synthesis of (xi_{1,n} .. xi_{J,n}): the Brownian part is
/// i.i.d. N(0, rho1^2) per coordinate (the basis is orthogonal over [0,n]),
/// the jump part is the exact finite sum over arrivals. Requires 1 <= J <= n.
std::vector<double> simulate_spectral_noise(const NoiseModel& model,
                                            long long n, long long J,
                                            std::uint64_t seed);

/// Path-domain realization of the same functionals: Ito-Riemann sums on a
/// grid of width <= dt for the Brownian integral (left endpoints), exact
/// arrival sums for the jump integral. Validation oracle only; requires
/// 0 < dt <= 0.01.
std::vector<double> simulate_path_integrals(const NoiseModel& model,
                                            long long n,
                                            const std::vector<int>& indices,
                                            double dt, std::uint64_t seed);

/// Estimated coefficients for one replicate: theta_hat[j-1] =
/// theta_j + xi_{j,n}/sqrt(n) for j = 1..n.
struct SpectralObservation {
  std::vector<double> theta_hat;
  long long n = 0;
  std::uint64_t seed = 0;
};

SpectralObservation observe(const PeriodicSignal& signal,
                            const NoiseModel& model, long long n,
                            std::uint64_t seed);

}  // namespace nprsim

#endif
