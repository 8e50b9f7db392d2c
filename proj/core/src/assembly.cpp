#include "xfer/assembly.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "xfer/parallel.hpp"
#include "xfer/wendland.hpp"

namespace xfer {

namespace {

std::atomic<std::uint64_t> g_interp_assemblies{0};
std::atomic<std::uint64_t> g_eval_assemblies{0};
std::atomic<std::uint64_t> g_precond_builds{0};

/// One row per evaluation point: candidates from a radius query at the row
/// point with the largest support radius, then the per-column strict filter
/// ||x_row - x_j|| < r_j.
SparseMatrix assemble_rows(const PointSet& row_points,
                           const NeighborIndex& src_index,
                           std::span<const double> radii) {
  const PointSet& src = src_index.points();
  if (radii.size() != src.size())
    throw std::invalid_argument("assembly: radii size must match source count");
  for (double r : radii)
    if (!(r > 0.0)) throw std::invalid_argument("assembly: radii must be positive");

  const double r_max = *std::max_element(radii.begin(), radii.end());
  const std::size_t n_rows = row_points.size();

  std::vector<std::vector<std::pair<int, double>>> rows(n_rows);
  parallel_for(static_cast<std::int64_t>(n_rows), [&](std::int64_t lo, std::int64_t hi) {
    std::vector<std::size_t> candidates;
    for (std::int64_t i = lo; i < hi; ++i) {
      const Point3& p = row_points[static_cast<std::size_t>(i)];
      src_index.radius_into(p, r_max, candidates);
      auto& row = rows[static_cast<std::size_t>(i)];
      row.clear();
      for (std::size_t j : candidates) {
        const double t = distance(p, src[j]);
        if (t < radii[j])
          row.emplace_back(static_cast<int>(j), wendland(t, radii[j]));
      }
      // candidates are sorted by index, so the row already is
    }
  });

  return SparseMatrix::from_sorted_rows(static_cast<int>(n_rows),
                                        static_cast<int>(src.size()), rows);
}

} // namespace

SparseMatrix assemble_interp_matrix(const NeighborIndex& src_index,
                                    std::span<const double> radii) {
  if (!src_index.points().source_grade())
    throw std::invalid_argument("assemble_interp_matrix: source cloud required "
                                "(distinct points)");
  auto m = assemble_rows(src_index.points(), src_index, radii);
  g_interp_assemblies.fetch_add(1, std::memory_order_relaxed);
  return m;
}

SparseMatrix assemble_eval_matrix(const PointSet& dst,
                                  const NeighborIndex& src_index,
                                  std::span<const double> radii) {
  auto m = assemble_rows(dst, src_index, radii);
  g_eval_assemblies.fetch_add(1, std::memory_order_relaxed);
  return m;
}

namespace counters {

std::uint64_t interp_assemblies() { return g_interp_assemblies.load(); }
std::uint64_t eval_assemblies() { return g_eval_assemblies.load(); }
std::uint64_t preconditioner_builds() { return g_precond_builds.load(); }
void bump_preconditioner_builds() { g_precond_builds.fetch_add(1, std::memory_order_relaxed); }

} // namespace counters

} // namespace xfer
