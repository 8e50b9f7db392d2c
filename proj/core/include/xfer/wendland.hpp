#pragma once

namespace xfer {

/// C^2 Wendland kernel phi(t, r) = max(1 - t/r, 0)^4 * (1 + 4 t/r).
/// phi(0, r) = 1, phi(t, r) = 0 for t >= r, monotone non-increasing in t.
/// Requires t >= 0 and r > 0.
double wendland(double t, double r);

/// Scale factor g(t, r) such that the spatial gradient of phi(||x - p||, r)
/// equals g(t, r) * (x - p) with t = ||x - p||. Equals -20 (1 - t/r)^3 / r^2
/// inside the support and 0 outside; finite everywhere including t = 0.
double wendland_grad_factor(double t, double r);

} // namespace xfer
