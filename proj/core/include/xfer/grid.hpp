#pragma once

#include <array>

#include "xfer/point_set.hpp"

namespace xfer {

/// Axis-aligned box partitioned into nx*ny*nz equal cells.
struct StructuredGrid {
  Point3 box_min{0.0, 0.0, 0.0};
  Point3 box_max{1.0, 1.0, 1.0};
  std::array<int, 3> cells{1, 1, 1};

  void validate() const;
  std::size_t cell_count() const {
    return static_cast<std::size_t>(cells[0]) * cells[1] * cells[2];
  }
};

/// Tensor-product Gauss-Legendre points, q nodes per coordinate direction in
/// every cell (q in {1,2,3}). Cells are iterated x-fastest, then y, then z;
/// nodes inside a cell likewise. All points are strictly interior to their
/// cell. The result is distinct by construction and returned source-grade.
PointSet gauss_points(const StructuredGrid& grid, int q);

} // namespace xfer
