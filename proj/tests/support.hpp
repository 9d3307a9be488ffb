#ifndef NPRSIM_TESTS_SUPPORT_HPP
#define NPRSIM_TESTS_SUPPORT_HPP

// Test-local numerical oracles, deliberately independent of the library's
// own quadrature and aggregation paths.

#include <cmath>
#include <functional>
#include <vector>

namespace testsupport {

/// Plain composite Simpson rule with `panels` panels (2*panels+1 nodes).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  const double h = (b - a) / (2.0 * panels);
  double sum = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

inline double mean_of(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  return m / static_cast<double>(x.size());
}

inline double variance_of(const std::vector<double>& x) {
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

inline double correlation_of(const std::vector<double>& x,
                             const std::vector<double>& y) {
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace testsupport

#endif
