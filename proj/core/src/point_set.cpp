#include "xfer/point_set.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace xfer {

namespace {

void check_finite(const std::vector<Point3>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point3& p = pts[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw std::invalid_argument("PointSet: non-finite coordinate at point " +
                                  std::to_string(i));
  }
}

} // namespace

PointSet PointSet::source(std::vector<Point3> points) {
  if (points.empty()) throw std::invalid_argument("PointSet: empty point set");
  check_finite(points);

  // Lexicographic sort of indices; duplicates land adjacent.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Point3 &p = points[a], &q = points[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points[order[k - 1]] == points[order[k]])
      throw std::invalid_argument(
          "PointSet: source cloud has duplicate points at indices " +
          std::to_string(order[k - 1]) + " and " + std::to_string(order[k]));
  }

  return PointSet(std::make_shared<const std::vector<Point3>>(std::move(points)), true);
}

PointSet PointSet::destination(std::vector<Point3> points) {
  if (points.empty()) throw std::invalid_argument("PointSet: empty point set");
  check_finite(points);
  return PointSet(std::make_shared<const std::vector<Point3>>(std::move(points)), false);
}

} // namespace xfer
