#include "nprsim/selection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nprsim/errors.hpp"

namespace nprsim {

namespace {

double tau_beta(int beta) {
  const double b = static_cast<double>(beta);
  return (b + 1.0) * (2.0 * b + 1.0) / (std::pow(std::numbers::pi, 2.0 * b) * b);
}

long long isqrt_floor(long long n) {
  long long r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

WeightSequence weight_sequence(int beta, double t, long long n) {
  if (beta < 1) throw std::invalid_argument("weight_sequence: beta must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("weight_sequence: t must be > 0");
  if (n < 2) throw std::invalid_argument("weight_sequence: n must be >= 2");
  WeightSequence w;
  w.beta = beta;
  w.t = t;
  w.omega = std::pow(tau_beta(beta) * t * static_cast<double>(n),
                     1.0 / (2.0 * beta + 1.0));
  w.j0 = static_cast<long long>(
      std::floor(w.omega / (1.0 + std::log(static_cast<double>(n)))));
  const long long support = static_cast<long long>(std::floor(w.omega));
  w.values.resize(static_cast<std::size_t>(std::max<long long>(support, 0)));
  double ss = 0.0;
  for (long long j = 1; j <= support; ++j) {
    const double g = (j <= w.j0)
                         ? 1.0
                         : 1.0 - std::pow(static_cast<double>(j) / w.omega,
                                          static_cast<double>(beta));
    w.values[static_cast<std::size_t>(j - 1)] = g;
    ss += g * g;
  }
  w.sum_sq = ss;
  return w;
}

WeightGrid weight_grid(long long n, const GridOverrides& overrides) {
  if (n < 3) throw std::invalid_argument("weight_grid: n must be >= 3");
  const double log_np1 = std::log(static_cast<double>(n) + 1.0);
  WeightGrid g;
  g.eps = overrides.eps.value_or(1.0 / log_np1);
  g.k_star = overrides.k_star.value_or(
      std::max(1, static_cast<int>(std::floor(std::sqrt(log_np1)))));
  if (!(g.eps > 0.0) || g.eps >= 1.0)
    throw config_error("weight_grid: eps must lie in (0,1)");
  if (g.k_star < 1) throw config_error("weight_grid: k_star must be >= 1");
  g.m = static_cast<int>(std::floor(1.0 / (g.eps * g.eps)));
  g.members.reserve(static_cast<std::size_t>(g.k_star) * g.m);
  for (int beta = 1; beta <= g.k_star; ++beta) {
    for (int i = 1; i <= g.m; ++i) {
      g.members.push_back(weight_sequence(beta, i * g.eps, n));
      if (g.members.back().support_end() > n) {
        throw config_error("weight_grid: filter support exceeds horizon n");
      }
    }
  }
  return g;
}

double sigma_hat(const SpectralObservation& obs) {
  const long long n = obs.n;
  const long long l = isqrt_floor(n) + 1;
  double s = 0.0;
  for (long long j = l; j <= n; ++j) {
    const double v = obs.theta_hat[static_cast<std::size_t>(j - 1)];
    s += v * v;
  }
  return s;
}

namespace {

double cost_given_sigma(const SpectralObservation& obs,
                        const WeightSequence& gamma, double rho,
                        double sigma_hat_value) {
  const double bias_shift = sigma_hat_value / static_cast<double>(obs.n);
  const long long support = std::min<long long>(gamma.support_end(), obs.n);
  double quad = 0.0;
  double cross = 0.0;
  for (long long j = 1; j <= support; ++j) {
    const double g = gamma.values[static_cast<std::size_t>(j - 1)];
    const double th = obs.theta_hat[static_cast<std::size_t>(j - 1)];
    const double th2 = th * th;
    quad += g * g * th2;
    cross += g * (th2 - bias_shift);
  }
  const double penalty =
      rho * sigma_hat_value * gamma.sum_sq / static_cast<double>(obs.n);
  return quad - 2.0 * cross + penalty;
}

}  // namespace

double cost(const SpectralObservation& obs, const WeightSequence& gamma,
            double rho) {
  if (!(rho > 0.0 && rho < 1.0 / 3.0))
    throw std::invalid_argument("cost: rho must lie in (0, 1/3)");
  return cost_given_sigma(obs, gamma, rho, sigma_hat(obs));
}

SelectionResult select(const SpectralObservation& obs, const WeightGrid& grid,
                       double rho) {
  if (grid.members.empty()) throw std::invalid_argument("select: empty grid");
  if (!(rho > 0.0 && rho < 1.0 / 3.0))
    throw std::invalid_argument("select: rho must lie in (0, 1/3)");
  const double sh = sigma_hat(obs);

  int best = -1;
  double best_cost = 0.0;
  for (int i = 0; i < static_cast<int>(grid.members.size()); ++i) {
    const auto& gamma = grid.members[static_cast<std::size_t>(i)];
    const double c = cost_given_sigma(obs, gamma, rho, sh);
    // Total order on (cost, beta, t) makes the argmin independent of the
    // order in which members are visited.
    if (best < 0 || c < best_cost ||
        (c == best_cost &&
         (gamma.beta < grid.members[static_cast<std::size_t>(best)].beta ||
          (gamma.beta == grid.members[static_cast<std::size_t>(best)].beta &&
           gamma.t < grid.members[static_cast<std::size_t>(best)].t)))) {
      best = i;
      best_cost = c;
    }
  }

  SelectionResult res;
  res.gamma_hat = grid.members[static_cast<std::size_t>(best)];
  res.member_index = best;
  res.cost_value = best_cost;
  res.sigma_hat = sh;
  res.rho = rho;
  const long long support = std::min<long long>(res.gamma_hat.support_end(), obs.n);
  res.estimate_coeffs.resize(static_cast<std::size_t>(support));
  for (long long j = 1; j <= support; ++j) {
    res.estimate_coeffs[static_cast<std::size_t>(j - 1)] =
        res.gamma_hat.values[static_cast<std::size_t>(j - 1)] *
        obs.theta_hat[static_cast<std::size_t>(j - 1)];
  }
  return res;
}

WeightSequence oracle_weight_alpha0(int k, double r, double sigma_star,
                                    long long n, double eps) {
  if (k < 1) throw std::invalid_argument("oracle_weight_alpha0: k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("oracle_weight_alpha0: eps must be > 0");
  const double r_bar = r / sigma_star;
  double t0 = std::floor(r_bar / eps) * eps;
  bool clamped = false;
  if (t0 <= 0.0) {
    t0 = eps;
    clamped = true;
  }
  WeightSequence w = weight_sequence(k, t0, n);
  w.clamped = clamped;
  return w;
}

double default_rho(long long n) {
  return 1.0 / (3.0 + std::log(static_cast<double>(n)));
}

}  // namespace nprsim
