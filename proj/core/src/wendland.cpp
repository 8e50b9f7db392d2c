#include "xfer/wendland.hpp"

#include <stdexcept>

namespace xfer {

double wendland(double t, double r) {
  if (t < 0.0) throw std::invalid_argument("wendland: t must be >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("wendland: r must be > 0");
  const double s = t / r;
  if (s >= 1.0) return 0.0;
  const double u = 1.0 - s;
  const double u2 = u * u;
  return u2 * u2 * (1.0 + 4.0 * s);
}

double wendland_grad_factor(double t, double r) {
  if (t < 0.0) throw std::invalid_argument("wendland: t must be >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("wendland: r must be > 0");
  const double s = t / r;
  if (s >= 1.0) return 0.0;
  const double u = 1.0 - s;
  return -20.0 * u * u * u / (r * r);
}

} // namespace xfer
