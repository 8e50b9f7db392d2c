#include "xfer/radii.hpp"

#include <stdexcept>
#include <string>

#include "xfer/parallel.hpp"

namespace xfer {

void RadiusConfig::validate() const {
  if (M < 1) throw std::invalid_argument("RadiusConfig: M must be >= 1");
  if (!(alpha > 1.0))
    throw std::invalid_argument("RadiusConfig: alpha must be > 1");
}

std::vector<double> adaptive_radii(const NeighborIndex& index,
                                   const RadiusConfig& cfg) {
  cfg.validate();
  const PointSet& ps = index.points();
  const std::size_t n = ps.size();
  if (n < static_cast<std::size_t>(cfg.M) + 1)
    throw std::invalid_argument("adaptive_radii: need at least M + 1 = " +
                                std::to_string(cfg.M + 1) + " points, got " +
                                std::to_string(n));

  std::vector<double> radii(n);
  parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t j = lo; j < hi; ++j) {
      const auto nn = index.knn_excluding(ps[static_cast<std::size_t>(j)],
                                          static_cast<std::size_t>(cfg.M),
                                          static_cast<std::size_t>(j));
      if (nn.back().dist <= 0.0)
        throw std::invalid_argument(
            "adaptive_radii: duplicate point at index " + std::to_string(j));
      radii[static_cast<std::size_t>(j)] = cfg.alpha * nn.back().dist;
    }
  });
  return radii;
}

std::vector<double> adaptive_radii(const PointSet& ps, const RadiusConfig& cfg) {
  return adaptive_radii(NeighborIndex(ps), cfg);
}

} // namespace xfer
