#include "xfer/kd_tree.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace xfer {

namespace {

inline double coord(const Point3& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

} // namespace

NeighborIndex::NeighborIndex(PointSet points) : points_(std::move(points)) {
  const std::size_t n = points_.size();
  order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<std::uint32_t>(i);
  nodes_.reserve(2 * n / kLeafSize + 2);
  root_ = build(0, static_cast<std::uint32_t>(n));
}

std::int32_t NeighborIndex::build(std::uint32_t begin, std::uint32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  for (int a = 0; a < 3; ++a) {
    node.box_min[a] = std::numeric_limits<double>::infinity();
    node.box_max[a] = -std::numeric_limits<double>::infinity();
  }
  for (std::uint32_t i = begin; i < end; ++i) {
    const Point3& p = points_[order_[i]];
    const double c[3] = {p.x, p.y, p.z};
    for (int a = 0; a < 3; ++a) {
      node.box_min[a] = std::min(node.box_min[a], c[a]);
      node.box_max[a] = std::max(node.box_max[a], c[a]);
    }
  }

  const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);

  if (end - begin > kLeafSize) {
    int axis = 0;
    double extent = node.box_max[0] - node.box_min[0];
    for (int a = 1; a < 3; ++a) {
      const double e = node.box_max[a] - node.box_min[a];
      if (e > extent) {
        extent = e;
        axis = a;
      }
    }
    // Zero extent means all points coincide; keep as a (large) leaf.
    if (extent > 0.0) {
      const std::uint32_t mid = begin + (end - begin) / 2;
      std::nth_element(order_.begin() + begin, order_.begin() + mid,
                       order_.begin() + end,
                       [&](std::uint32_t a, std::uint32_t b) {
                         return coord(points_[a], axis) < coord(points_[b], axis);
                       });
      const std::int32_t l = build(begin, mid);
      const std::int32_t r = build(mid, end);
      nodes_[id].left = l;
      nodes_[id].right = r;
    }
  }
  return id;
}

double NeighborIndex::box_distance2(const Node& n, const Point3& q) const {
  const double c[3] = {q.x, q.y, q.z};
  double d2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    double d = 0.0;
    if (c[a] < n.box_min[a])
      d = n.box_min[a] - c[a];
    else if (c[a] > n.box_max[a])
      d = c[a] - n.box_max[a];
    d2 += d * d;
  }
  return d2;
}

std::vector<NeighborIndex::Neighbor> NeighborIndex::knn(const Point3& query,
                                                        std::size_t k) const {
  return knn_excluding(query, k, points_.size()); // out-of-range: excludes nothing
}

std::vector<NeighborIndex::Neighbor> NeighborIndex::knn_excluding(
    const Point3& query, std::size_t k, std::size_t exclude) const {
  const std::size_t available =
      points_.size() - (exclude < points_.size() ? 1 : 0);
  k = std::min(k, available);
  if (k == 0) return {};

  using Entry = std::pair<double, std::uint32_t>; // (dist2, index)
  std::priority_queue<Entry> heap;                // max at top, lexicographic

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (heap.size() == k && box_distance2(node, query) > heap.top().first)
      return;
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        if (idx == exclude) continue;
        const double d2 = squared_distance(points_[idx], query);
        const Entry e{d2, idx};
        if (heap.size() < k) {
          heap.push(e);
        } else if (e < heap.top()) {
          heap.pop();
          heap.push(e);
        }
      }
      return;
    }
    const double dl = box_distance2(nodes_[node.left], query);
    const double dr = box_distance2(nodes_[node.right], query);
    if (dl <= dr) {
      self(self, node.left);
      if (heap.size() < k || dr <= heap.top().first) self(self, node.right);
    } else {
      self(self, node.right);
      if (heap.size() < k || dl <= heap.top().first) self(self, node.left);
    }
  };
  visit(visit, root_);

  std::vector<Neighbor> result(heap.size());
  for (std::size_t i = heap.size(); i-- > 0;) {
    const Entry e = heap.top();
    heap.pop();
    result[i] = Neighbor{e.second, std::sqrt(e.first)};
  }
  return result;
}

std::vector<std::size_t> NeighborIndex::radius(const Point3& query,
                                               double r) const {
  std::vector<std::size_t> out;
  radius_into(query, r, out);
  return out;
}

void NeighborIndex::radius_into(const Point3& query, double r,
                                std::vector<std::size_t>& out) const {
  if (r < 0.0) throw std::invalid_argument("NeighborIndex: negative radius");
  out.clear();
  const double r2 = r * r;

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (box_distance2(node, query) > r2) return;
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        if (squared_distance(points_[idx], query) <= r2) out.push_back(idx);
      }
      return;
    }
    self(self, node.left);
    self(self, node.right);
  };
  visit(visit, root_);

  std::sort(out.begin(), out.end());
}

} // namespace xfer
