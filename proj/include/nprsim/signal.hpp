#ifndef NPRSIM_SIGNAL_HPP
#define NPRSIM_SIGNAL_HPP

#include <string>
#include <variant>
#include <vector>

namespace nprsim {

/// A 1-periodic target function stored spectrally: coefficients against the
/// trigonometric basis, plus an exact upper bound on the energy of the
/// truncated tail. Finite expansions carry tail_bound == 0.
struct PeriodicSignal {
  std::vector<double> coeffs;  // theta_1 .. theta_J
  double tail_bound = 0.0;     // upper bound on sum_{j>J} theta_j^2
  std::string label;

  std::size_t length() const { return coeffs.size(); }
  double coeff(std::size_t j) const {  // 1-based, zero beyond J
    return (j >= 1 && j <= coeffs.size()) ? coeffs[j - 1] : 0.0;
  }
  /// Pointwise synthesis from the stored coefficients.
  double evaluate(double x) const;
};

struct SobolevBall {
  int k = 1;       // smoothness order, >= 1
  double r = 1.0;  // ellipsoid radius, > 0
};

/// phi_1 = 1; for j >= 2, sqrt(2)*cos(2*pi*[j/2]*x) when j is even and
/// sqrt(2)*sin(2*pi*[j/2]*x) when j is odd. Throws std::invalid_argument
/// for j < 1.
double basis_eval(int j, double x);

/// Ellipsoid weight a_j = sum_{i=0}^{k} (2*pi*[j/2])^(2i), with 0^0 = 1 so
/// that a_1 = 1 for every k.
double sobolev_weight(int j, int k);

/// Value of the ellipsoid functional sum_j a_j theta_j^2 over the stored
/// coefficients.
double ellipsoid_functional(const PeriodicSignal& signal, int k);

/// Membership verdict for a Sobolev ball; only exact when the signal has a
/// zero tail bound.
struct EllipsoidVerdict {
  double value = 0.0;   // functional over stored coefficients
  bool inside = false;  // value <= r
  bool exact = false;   // tail_bound == 0
};
EllipsoidVerdict ellipsoid_membership(const PeriodicSignal& signal,
                                      const SobolevBall& ball);

// --- test-signal generators ------------------------------------------------

struct FiniteFourierSpec {
  std::vector<double> coeffs;
};

/// Coefficients placed on the listed coordinates so that the ellipsoid
/// functional equals r exactly: theta_{c_i} = sqrt(r * w_i / a_{c_i}) with
/// weights w summing to 1 (equal split by default).
struct BoundaryEllipsoidSpec {
  int k = 1;
  double r = 1.0;
  std::vector<int> coords = {2};
  std::vector<double> weights;  // optional, same length as coords
};

/// theta_j = amplitude * decay^j for j = 1..J, with the exact geometric
/// tail bound sum_{j>J} theta_j^2.
struct SmoothAnalyticSpec {
  double amplitude = 1.0;
  double decay = 0.9;  // in (0,1)
  int J = 30;
};

struct SignalSpec {
  std::variant<FiniteFourierSpec, BoundaryEllipsoidSpec, SmoothAnalyticSpec>
      generator;
  std::string label;
};

PeriodicSignal make_test_signal(const SignalSpec& spec);

}  // namespace nprsim

#endif
