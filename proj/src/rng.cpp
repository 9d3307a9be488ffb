#include "nprsim/rng.hpp"

#include <cmath>

namespace nprsim {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::exponential(double rate) {
  // -log1p(-U) maps U in [0,1) to (0, inf) without ever taking log(0).
  return -std::log1p(-uniform()) / rate;
}

}  // namespace nprsim
