#pragma once

#include <cstdint>
#include <vector>

#include "xfer/point_set.hpp"

namespace xfer {

/// Exact spatial index over a PointSet (bounding-box kd-tree).
///
/// Queries are exact, never approximate: k-nearest-neighbor results equal a
/// brute-force scan ordered by (distance, index), and radius queries return
/// every point inside the closed ball. Immutable after construction and safe
/// for unlimited concurrent reads.
class NeighborIndex {
public:
  explicit NeighborIndex(PointSet points);

  const PointSet& points() const { return points_; }

  struct Neighbor {
    std::size_t index;
    double dist;
  };

  /// The k nearest points, sorted by (distance, index). k is clamped to the
  /// set size. Ties beyond k are resolved toward the smaller index.
  std::vector<Neighbor> knn(const Point3& query, std::size_t k) const;

  /// Same but never returns `exclude` (used for "M other points" searches).
  std::vector<Neighbor> knn_excluding(const Point3& query, std::size_t k,
                                      std::size_t exclude) const;

  /// Indices of all points with distance <= r (closed ball), sorted.
  std::vector<std::size_t> radius(const Point3& query, double r) const;
  void radius_into(const Point3& query, double r,
                   std::vector<std::size_t>& out) const;

private:
  struct Node {
    double box_min[3];
    double box_max[3];
    std::int32_t left = -1;   // -1 for leaves
    std::int32_t right = -1;
    std::uint32_t begin = 0;  // leaf range into order_
    std::uint32_t end = 0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  double box_distance2(const Node& n, const Point3& q) const;

  PointSet points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;

  static constexpr std::uint32_t kLeafSize = 16;
};

} // namespace xfer
