#pragma once

#include <vector>

#include "xfer/kd_tree.hpp"
#include "xfer/point_set.hpp"

namespace xfer {

/// Parameters of the adaptive kernel radius r_j = alpha * rbar_j, where
/// rbar_j is the smallest radius whose closed ball around point j contains
/// at least M points other than j.
struct RadiusConfig {
  int M = 2;
  double alpha = 2.0;

  void validate() const;
};

/// Per-point support radii for `index.points()`. Requires count >= M + 1.
/// Ties at the M-th neighbor distance are benign: rbar_j is a distance, so
/// every tied point ends up inside the closed ball.
std::vector<double> adaptive_radii(const NeighborIndex& index,
                                   const RadiusConfig& cfg);

/// Convenience overload building a temporary index.
std::vector<double> adaptive_radii(const PointSet& ps, const RadiusConfig& cfg);

} // namespace xfer
