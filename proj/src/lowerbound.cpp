#include "nprsim/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "nprsim/quadrature.hpp"
#include "nprsim/risk.hpp"

namespace nprsim {

namespace {

constexpr double kPi = std::numbers::pi;

double bump_raw(double x) {
  const double s = 1.0 - x * x;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

// Antiderivative table of the unnormalized bump on a uniform grid over
// [-1,1]; cells are integrated with a 16-point Gauss rule, interpolation is
// cubic Hermite with the exact integrand as derivative.
struct BumpTable {
  static constexpr int kCells = 16384;
  std::vector<double> cumulative;  // kCells + 1 nodes
  double total = 0.0;

  BumpTable() {
    cumulative.resize(kCells + 1, 0.0);
    const double dx = 2.0 / kCells;
    for (int i = 0; i < kCells; ++i) {
      const double a = -1.0 + i * dx;
      cumulative[i + 1] =
          cumulative[i] + gauss_panels(bump_raw, a, a + dx, 1);
    }
    total = cumulative[kCells];
  }

  // integral of the raw bump from -1 to x
  double eval(double x) const {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return total;
    const double dx = 2.0 / kCells;
    const double pos = (x + 1.0) / dx;
    int cell = static_cast<int>(pos);
    if (cell >= kCells) cell = kCells - 1;
    const double a = -1.0 + cell * dx;
    const double u = (x - a) / dx;
    const double f0 = cumulative[cell];
    const double f1 = cumulative[cell + 1];
    const double d0 = bump_raw(a) * dx;
    const double d1 = bump_raw(a + dx) * dx;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2.0 * u3 - 3.0 * u2 + 1.0) * f0 + (u3 - 2.0 * u2 + u) * d0 +
           (-2.0 * u3 + 3.0 * u2) * f1 + (u3 - u2) * d1;
  }
};

const BumpTable& bump_table() {
  static const BumpTable table;
  return table;
}

}  // namespace

double mollifier_constant() { return 1.0 / bump_table().total; }

double mollifier(double x) { return mollifier_constant() * bump_raw(x); }

double mollifier_integral(double a, double b) {
  if (b <= a) return 0.0;
  const BumpTable& t = bump_table();
  return (t.eval(b) - t.eval(a)) / t.total;
}

double smoothed_indicator(double x, double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("smoothed_indicator: eta must lie in (0,1)");
  // substitute w = (u - x)/eta in the defining convolution
  const double lo = (-(1.0 - eta) - x) / eta;
  const double hi = ((1.0 - eta) - x) / eta;
  return mollifier_integral(std::max(lo, -1.0), std::min(hi, 1.0));
}

double half_basis_eval(int j, double x) {
  if (j < 1) throw std::invalid_argument("half_basis_eval: index must be >= 1");
  if (j == 1) return 1.0 / std::numbers::sqrt2;
  const int m = j / 2;
  const double ang = kPi * m * x;
  return (j % 2 == 0) ? std::cos(ang) : std::sin(ang);
}

double K_functional(int j, const std::function<double(double)>& f) {
  if (j < 1) throw std::invalid_argument("K_functional: index must be >= 1");
  const int m = j / 2;
  auto integrand = [&](double v) {
    const double e = half_basis_eval(j, v);
    return e * e * f(v);
  };
  // split at the oscillation scale so the adaptive rule starts well resolved
  const int segments = std::max(8, 4 * m);
  std::vector<double> breaks;
  breaks.reserve(segments - 1);
  for (int i = 1; i < segments; ++i) {
    breaks.push_back(-1.0 + 2.0 * i / segments);
  }
  return integrate(integrand, -1.0, 1.0, breaks, 1e-10);
}

double NnRule::operator()(double n) const {
  return scale * std::pow(std::log(n), power);
}

double bandwidth(int k, double r, double sigma_star, double eps, double n,
                 const NnRule& rule) {
  if (k < 1) throw std::invalid_argument("bandwidth: k must be >= 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("bandwidth: eps must lie in (0,1)");
  if (!(n > 1.0)) throw std::invalid_argument("bandwidth: n must exceed 1");
  const double kk = static_cast<double>(k);
  const double expo = 2.0 * kk + 1.0;
  const double upsilon = sigma_star * kk * std::pow(kPi, 2.0 * kk) /
                         ((1.0 - eps) * r * std::pow(2.0, expo) * (kk + 1.0) * expo);
  const double h = std::pow(upsilon, 1.0 / expo) * rule(n) * std::pow(n, -1.0 / expo);
  if (h >= 0.25) {
    throw std::domain_error(
        "bandwidth: h >= 1/4, no valid block partition; increase n for the "
        "configured N_n rule");
  }
  return h;
}

double PriorDesign::y_star(long long j) const {
  return std::pow(static_cast<double>(N), k) *
             std::pow(static_cast<double>(j), -static_cast<double>(k)) -
         1.0;
}

double PriorDesign::prior_sd(long long j) const {
  return std::sqrt(sigma_star * y_star(j) / (n * h));
}

PriorDesign make_prior_design(int k, double r, double sigma_star, double eps,
                              double eta, double n, const NnRule& rule) {
  PriorDesign d;
  d.k = k;
  d.r = r;
  d.sigma_star = sigma_star;
  d.eps = eps;
  d.eta = eta;
  d.n = n;
  d.h = bandwidth(k, r, sigma_star, eps, n, rule);
  d.N = static_cast<long long>(std::ceil(rule(n)));
  if (d.N < 1) throw std::domain_error("make_prior_design: N_n rule gave N < 1");
  d.M = static_cast<long long>(std::floor(1.0 / (2.0 * d.h))) - 1;
  if (d.M < 1) throw std::domain_error("make_prior_design: M < 1");
  return d;
}

double van_trees_bound(double fisher_energy, double b_j, double prior_info,
                       double sigma_star) {
  if (!(prior_info > 0.0))
    throw std::invalid_argument("van_trees_bound: prior information must be > 0");
  return sigma_star * b_j * b_j / (fisher_energy + sigma_star * prior_info);
}

namespace {

// Frequency moments of the smoothed indicator. I_eta equals 1 on the plateau
// |x| <= 1-2eta and transitions inside the two eta-bands, so
//   \int cos(pi q x) I^p dx = plateau term + 2 * band integral,
// with the band integral cheap for any q (at most q*eta oscillations).
class IndicatorMoments {
 public:
  explicit IndicatorMoments(double eta) : eta_(eta) {
    int_i_ = 2.0 * (1.0 - eta);  // exact: the kernel has unit mass
    int_i2_ = 2.0 * (1.0 - 2.0 * eta) + 2.0 * band_integral(0, /*squared=*/true);
  }

  double int_I() const { return int_i_; }
  double int_I2() const { return int_i2_; }

  double cos_I(long long q) { return moment(q, false); }
  double cos_I2(long long q) { return moment(q, true); }

 private:
  double band_value(double x, bool squared) const {
    const double v = mollifier_integral(-1.0, (1.0 - eta_ - x) / eta_);
    return squared ? v * v : v;
  }

  double band_integral(long long q, bool squared) const {
    const double lo = 1.0 - 2.0 * eta_;
    auto f = [&](double x) {
      const double base = band_value(x, squared);
      return q == 0 ? base : std::cos(kPi * static_cast<double>(q) * x) * base;
    };
    const int panels =
        16 + static_cast<int>(std::ceil(static_cast<double>(q) * eta_ * 4.0));
    return gauss_panels(f, lo, 1.0, panels);
  }

  double moment(long long q, bool squared) {
    if (q == 0) return squared ? int_i2_ : int_i_;
    auto& cache = squared ? cache2_ : cache1_;
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    const double arg = kPi * static_cast<double>(q) * (1.0 - 2.0 * eta_);
    const double plateau = 2.0 * std::sin(arg) / (kPi * static_cast<double>(q));
    const double value = plateau + 2.0 * band_integral(q, squared);
    cache.emplace(q, value);
    return value;
  }

  double eta_;
  double int_i_ = 0.0;
  double int_i2_ = 0.0;
  std::map<long long, double> cache1_;
  std::map<long long, double> cache2_;
};

}  // namespace

BayesBound bayes_lower_bound(const PriorDesign& design, double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("bayes_lower_bound: eta must lie in (0,1)");
  IndicatorMoments mom(eta);
  const double k1_base = mom.int_I() / 2.0;
  const double k2_base = mom.int_I2() / 2.0;

  double sum_tau = 0.0;
  double sum_limit = 0.0;
  // Beyond this many vanishing moments in a row the cosine coefficients are
  // numerically zero and K_j collapses to the plateau value.
  int dead = 0;
  double c1 = 0.0, c2 = 0.0;
  for (long long j = 1; j <= design.N; ++j) {
    const double y = design.y_star(j);
    if (y <= 0.0) continue;  // y*_N = 0 contributes nothing
    double kj1 = k1_base;
    double kj2 = k2_base;
    if (j >= 2) {
      const long long m = j / 2;
      if (dead < 8) {
        c1 = mom.cos_I(2 * m);
        c2 = mom.cos_I2(2 * m);
        if (std::fabs(c1) < 1e-14 && std::fabs(c2) < 1e-14) {
          ++dead;
        } else {
          dead = 0;
        }
      } else {
        c1 = 0.0;
        c2 = 0.0;
      }
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      kj1 += sign * c1 / 2.0;
      kj2 += sign * c2 / 2.0;
    }
    sum_tau += kj1 * kj1 * y / (kj2 * y + 1.0);
    sum_limit += y / (y + 1.0);
  }

  BayesBound out;
  const double scale = design.sigma_star / (2.0 * design.n * design.h);
  out.bound = scale * sum_tau;
  out.limit_form = scale * sum_limit;
  const double kk = static_cast<double>(design.k);
  const double rate = std::pow(design.n, 2.0 * kk / (2.0 * kk + 1.0));
  const double rstar = pinsker_constant(design.k, design.r, design.sigma_star);
  out.normalized_bound = rate * out.bound / rstar;
  out.normalized_limit = rate * out.limit_form / rstar;
  return out;
}

std::vector<PinskerLimitRow> pinsker_limit_check(
    int k, double r, double sigma_star, double eps,
    const std::vector<double>& n_list, const NnRule& rule) {
  std::vector<PinskerLimitRow> rows;
  const double kk = static_cast<double>(k);
  const double target = std::pow(1.0 - eps, 1.0 / (2.0 * kk + 1.0));
  const double rstar = pinsker_constant(k, r, sigma_star);
  for (double n : n_list) {
    const double h = bandwidth(k, r, sigma_star, eps, n, rule);
    const long long N = static_cast<long long>(std::ceil(rule(n)));
    double sum = 0.0;
    const double nk = std::pow(static_cast<double>(N), kk);
    for (long long j = 1; j <= N; ++j) {
      const double y = nk * std::pow(static_cast<double>(j), -kk) - 1.0;
      if (y > 0.0) sum += y / (y + 1.0);
    }
    PinskerLimitRow row;
    row.n = n;
    row.target = target;
    row.ratio = std::pow(n, 2.0 * kk / (2.0 * kk + 1.0)) * sigma_star * sum /
                (2.0 * n * h * rstar);
    row.gap = std::fabs(row.ratio - target);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> project_ball(const std::vector<double>& coeffs, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("project_ball: r must be > 0");
  double norm_sq = 0.0;
  for (double c : coeffs) norm_sq += c * c;
  if (norm_sq <= r) return coeffs;
  const double scale = std::sqrt(r / norm_sq);
  std::vector<double> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i] * scale;
  return out;
}

}  // namespace nprsim
