#ifndef NPRSIM_STATS_HPP
#define NPRSIM_STATS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace nprsim {

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic two-sample critical value at level alpha:
/// c(alpha) * sqrt((na+nb)/(na*nb)) with c(alpha) = sqrt(-ln(alpha/2)/2).
inline double ks_critical(double alpha, std::size_t na, std::size_t nb) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt((static_cast<double>(na) + static_cast<double>(nb)) /
                       (static_cast<double>(na) * static_cast<double>(nb)));
}

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;  // from the empirical fourth moment
};

inline SampleSummary summarize_sample(const std::vector<double>& x) {
  SampleSummary s;
  const double n = static_cast<double>(x.size());
  for (double v : x) s.mean += v;
  s.mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  s.variance = x.size() > 1 ? m2 / (n - 1.0) : 0.0;
  s.se_mean = std::sqrt(s.variance / n);
  const double v2 = m2 / n;
  s.se_variance = std::sqrt(std::max(m4 / n - v2 * v2, 0.0) / n);
  return s;
}

}  // namespace nprsim

#endif
