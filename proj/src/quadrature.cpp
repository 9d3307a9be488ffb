#include "nprsim/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace nprsim {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double& fm) {
  const double m = 0.5 * (a + b);
  fm = f(m);
  return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double m, double fm, double whole,
                double eps, int depth) {
  const double lm_mid = 0.5 * (a + m);
  const double rm_mid = 0.5 * (m + b);
  const double flm = f(lm_mid);
  const double frm = f(rm_mid);
  const double left = (m - a) * (fa + 4.0 * flm + fm) / 6.0;
  const double right = (b - m) * (fm + 4.0 * frm + fb) / 6.0;
  const double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15.0 * eps) {
    return left + right + diff / 15.0;
  }
  return adaptive(f, a, fa, m, fm, lm_mid, flm, left, 0.5 * eps, depth - 1) +
         adaptive(f, m, fm, b, fb, rm_mid, frm, right, 0.5 * eps, depth - 1);
}

// 16-point Gauss-Legendre abscissas/weights on [-1,1] (positive half).
constexpr double kGlx[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlw[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  double fm;
  const double whole = simpson(f, a, fa, b, fb, fm);
  return adaptive(f, a, fa, b, fb, 0.5 * (a + b), fm, whole, abs_tol, 48);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints, double abs_tol) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  const double per = abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] > pts[i]) total += integrate(f, pts[i], pts[i + 1], per);
  }
  return total;
}

double gauss_panels(const std::function<double(double)>& f, double a, double b,
                    int panels) {
  if (panels < 1) panels = 1;
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
      s += kGlw[i] * (f(mid - half * kGlx[i]) + f(mid + half * kGlx[i]));
    }
    total += s * half;
  }
  return total;
}

}  // namespace nprsim
