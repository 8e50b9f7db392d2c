#include "xfer/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace xfer {

void StructuredGrid::validate() const {
  if (!(box_min.x < box_max.x && box_min.y < box_max.y && box_min.z < box_max.z))
    throw std::invalid_argument("StructuredGrid: box extents must be positive");
  if (cells[0] < 1 || cells[1] < 1 || cells[2] < 1)
    throw std::invalid_argument("StructuredGrid: cells per axis must be >= 1");
}

PointSet gauss_points(const StructuredGrid& grid, int q) {
  grid.validate();

  // Gauss-Legendre abscissae on [-1, 1].
  std::vector<double> xi;
  switch (q) {
    case 1: xi = {0.0}; break;
    case 2: xi = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}; break;
    case 3: xi = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)}; break;
    default:
      throw std::invalid_argument("gauss_points: q must be 1, 2 or 3");
  }

  const double lo[3] = {grid.box_min.x, grid.box_min.y, grid.box_min.z};
  const double hi[3] = {grid.box_max.x, grid.box_max.y, grid.box_max.z};
  double h[3];
  for (int a = 0; a < 3; ++a) h[a] = (hi[a] - lo[a]) / grid.cells[a];

  std::vector<Point3> pts;
  pts.reserve(grid.cell_count() * q * q * q);
  for (int cz = 0; cz < grid.cells[2]; ++cz)
    for (int cy = 0; cy < grid.cells[1]; ++cy)
      for (int cx = 0; cx < grid.cells[0]; ++cx)
        for (int gz = 0; gz < q; ++gz)
          for (int gy = 0; gy < q; ++gy)
            for (int gx = 0; gx < q; ++gx) {
              auto map = [&](int axis, int cell, double node) {
                return lo[axis] + h[axis] * (cell + 0.5 * (node + 1.0));
              };
              pts.push_back(Point3{map(0, cx, xi[gx]), map(1, cy, xi[gy]),
                                   map(2, cz, xi[gz])});
            }

  return PointSet::source(std::move(pts));
}

} // namespace xfer
