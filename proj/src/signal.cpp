#include "nprsim/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nprsim/errors.hpp"

namespace nprsim {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double basis_eval(int j, double x) {
  if (j < 1) throw std::invalid_argument("basis_eval: index must be >= 1");
  if (j == 1) return 1.0;
  const int m = j / 2;
  const double ang = kTwoPi * m * x;
  return (j % 2 == 0) ? kSqrt2 * std::cos(ang) : kSqrt2 * std::sin(ang);
}

double sobolev_weight(int j, int k) {
  if (j < 1) throw std::invalid_argument("sobolev_weight: index must be >= 1");
  if (k < 1) throw std::invalid_argument("sobolev_weight: order must be >= 1");
  const int m = j / 2;
  if (m == 0) return 1.0;  // 0^0 = 1, higher powers vanish
  const double base = (kTwoPi * m) * (kTwoPi * m);
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i <= k; ++i) {
    term *= base;
    sum += term;
  }
  return sum;
}

double PeriodicSignal::evaluate(double x) const {
  double v = 0.0;
  for (std::size_t j = 1; j <= coeffs.size(); ++j) {
    v += coeffs[j - 1] * basis_eval(static_cast<int>(j), x);
  }
  return v;
}

double ellipsoid_functional(const PeriodicSignal& signal, int k) {
  double sum = 0.0;
  for (std::size_t j = 1; j <= signal.coeffs.size(); ++j) {
    const double t = signal.coeffs[j - 1];
    if (t != 0.0) sum += sobolev_weight(static_cast<int>(j), k) * t * t;
  }
  return sum;
}

EllipsoidVerdict ellipsoid_membership(const PeriodicSignal& signal,
                                      const SobolevBall& ball) {
  EllipsoidVerdict v;
  v.value = ellipsoid_functional(signal, ball.k);
  v.inside = v.value <= ball.r;
  v.exact = signal.tail_bound == 0.0;
  return v;
}

PeriodicSignal make_test_signal(const SignalSpec& spec) {
  PeriodicSignal out;
  out.label = spec.label;
  if (const auto* ff = std::get_if<FiniteFourierSpec>(&spec.generator)) {
    if (ff->coeffs.empty())
      throw config_error("finite-fourier signal needs at least one coefficient");
    out.coeffs = ff->coeffs;
    out.tail_bound = 0.0;
    if (out.label.empty()) out.label = "finite-fourier";
    return out;
  }
  if (const auto* be = std::get_if<BoundaryEllipsoidSpec>(&spec.generator)) {
    if (be->coords.empty())
      throw config_error("boundary-ellipsoid signal needs coordinates");
    if (be->r <= 0.0) throw config_error("boundary-ellipsoid radius must be > 0");
    if (be->k < 1) throw config_error("boundary-ellipsoid order must be >= 1");
    std::vector<double> w = be->weights;
    if (w.empty()) {
      w.assign(be->coords.size(), 1.0 / static_cast<double>(be->coords.size()));
    } else if (w.size() != be->coords.size()) {
      throw config_error("boundary-ellipsoid weights/coords length mismatch");
    }
    double wsum = 0.0;
    for (double wi : w) {
      if (wi <= 0.0) throw config_error("boundary-ellipsoid weights must be > 0");
      wsum += wi;
    }
    int jmax = 0;
    for (int c : be->coords) {
      if (c < 1) throw config_error("boundary-ellipsoid coordinate must be >= 1");
      jmax = std::max(jmax, c);
    }
    out.coeffs.assign(static_cast<std::size_t>(jmax), 0.0);
    for (std::size_t i = 0; i < be->coords.size(); ++i) {
      const int j = be->coords[i];
      if (out.coeffs[j - 1] != 0.0)
        throw config_error("boundary-ellipsoid coordinates must be distinct");
      out.coeffs[j - 1] =
          std::sqrt(be->r * (w[i] / wsum) / sobolev_weight(j, be->k));
    }
    out.tail_bound = 0.0;
    if (out.label.empty()) out.label = "boundary-ellipsoid";
    return out;
  }
  const auto& sa = std::get<SmoothAnalyticSpec>(spec.generator);
  if (!(sa.decay > 0.0 && sa.decay < 1.0))
    throw config_error("smooth-analytic decay must lie in (0,1)");
  if (sa.J < 1) throw config_error("smooth-analytic J must be >= 1");
  out.coeffs.resize(static_cast<std::size_t>(sa.J));
  for (int j = 1; j <= sa.J; ++j) {
    out.coeffs[j - 1] = sa.amplitude * std::pow(sa.decay, j);
  }
  const double q2 = sa.decay * sa.decay;
  out.tail_bound = sa.amplitude * sa.amplitude *
                   std::pow(sa.decay, 2.0 * (sa.J + 1)) / (1.0 - q2);
  if (out.label.empty()) out.label = "smooth-analytic";
  return out;
}

}  // namespace nprsim
