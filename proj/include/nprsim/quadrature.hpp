#ifndef NPRSIM_QUADRATURE_HPP
#define NPRSIM_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace nprsim {

/// Adaptive Simpson integration of f over [a,b] to the given absolute
/// tolerance. Smooth integrands only; recursion depth is capped.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

/// Same, but the interval is first split at the given interior breakpoints
/// (useful when the integrand is only piecewise smooth).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints, double abs_tol);

/// Fixed-order Gauss-Legendre rule on [a,b] split into `panels` equal panels,
/// 16 nodes per panel. Exact enough for smooth oscillatory integrands when
/// the panel count resolves the oscillation.
double gauss_panels(const std::function<double(double)>& f, double a, double b,
                    int panels);

}  // namespace nprsim

#endif
