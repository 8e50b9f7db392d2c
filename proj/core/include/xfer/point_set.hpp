#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace xfer {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double squared_distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double distance(const Point3& a, const Point3& b) {
  return std::sqrt(squared_distance(a, b));
}

/// An immutable, ordered cloud of 3D points. Cheap to copy (shared storage).
///
/// Source clouds must have pairwise-distinct points so the interpolation
/// system is well defined; `source()` enforces this and tags the set.
/// Destination clouds may contain duplicates.
class PointSet {
public:
  /// Validates count >= 1, finite coordinates, and pairwise distinctness.
  static PointSet source(std::vector<Point3> points);
  /// Validates count >= 1 and finite coordinates only.
  static PointSet destination(std::vector<Point3> points);

  std::size_t size() const { return points_->size(); }
  const Point3& operator[](std::size_t i) const { return (*points_)[i]; }
  std::span<const Point3> points() const { return {points_->data(), points_->size()}; }

  /// True when constructed through source() (distinctness verified).
  bool source_grade() const { return source_grade_; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return *a.points_ == *b.points_;
  }

private:
  PointSet(std::shared_ptr<const std::vector<Point3>> pts, bool source_grade)
      : points_(std::move(pts)), source_grade_(source_grade) {}

  std::shared_ptr<const std::vector<Point3>> points_;
  bool source_grade_ = false;
};

} // namespace xfer
