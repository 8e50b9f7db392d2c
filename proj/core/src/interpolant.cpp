#include "xfer/interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "xfer/errors.hpp"
#include "xfer/parallel.hpp"
#include "xfer/wendland.hpp"

namespace xfer {

Interpolant build_interpolant(const PointSet& src, std::span<const double> values,
                              std::span<const double> radii,
                              const SparseMatrix& phi_int,
                              const SparseMatrix& precond, const SolverConfig& cfg,
                              SolveStats* stats) {
  if (values.size() != src.size())
    throw std::invalid_argument("build_interpolant: values size " +
                                std::to_string(values.size()) + " != source count " +
                                std::to_string(src.size()));
  if (radii.size() != src.size())
    throw std::invalid_argument("build_interpolant: radii size mismatch");

  SolveResult res = gmres(phi_int, values, precond, cfg);
  if (stats) *stats = res.stats;
  if (!res.stats.converged)
    throw NumericalError(
        std::string("build_interpolant: GMRES ") +
        (res.stats.breakdown ? "breakdown" : "did not converge") + " (residual " +
        std::to_string(res.stats.residual) + " after " +
        std::to_string(res.stats.iterations) + " iterations)");

  return Interpolant{src, {radii.begin(), radii.end()}, std::move(res.x)};
}

std::vector<double> evaluate_rescaled(const RescaledInterpolant& fi,
                                      const SparseMatrix& phi_eval) {
  std::vector<double> num = spmv(phi_eval, fi.f.gamma);
  const std::vector<double> den = spmv(phi_eval, fi.g.gamma);
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (den[i] < kDenominatorFloor)
      throw NumericalError("evaluate_rescaled: destination point " + std::to_string(i) +
                           " is not covered by any source support (denominator " +
                           std::to_string(den[i]) + ")");
    num[i] /= den[i];
  }
  return num;
}

namespace {

double max_radius(const Interpolant& f) {
  return *std::max_element(f.radii.begin(), f.radii.end());
}

} // namespace

double evaluate_plain_at(const Interpolant& f, const NeighborIndex& src_index,
                         const Point3& x) {
  const PointSet& src = src_index.points();
  double acc = 0.0;
  for (std::size_t j : src_index.radius(x, max_radius(f))) {
    const double t = distance(x, src[j]);
    if (t < f.radii[j]) acc += f.gamma[j] * wendland(t, f.radii[j]);
  }
  return acc;
}

Eigen::Vector3d gradient_plain_at(const Interpolant& f,
                                  const NeighborIndex& src_index, const Point3& x) {
  const PointSet& src = src_index.points();
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t j : src_index.radius(x, max_radius(f))) {
    const double t = distance(x, src[j]);
    if (t < f.radii[j]) {
      const double s = f.gamma[j] * wendland_grad_factor(t, f.radii[j]);
      acc += s * Eigen::Vector3d(x.x - src[j].x, x.y - src[j].y, x.z - src[j].z);
    }
  }
  return acc;
}

double evaluate_rescaled_at(const RescaledInterpolant& fi,
                            const NeighborIndex& src_index, const Point3& x) {
  const double den = evaluate_plain_at(fi.g, src_index, x);
  if (den < kDenominatorFloor)
    throw NumericalError("evaluate_rescaled_at: point not covered by any source "
                         "support");
  return evaluate_plain_at(fi.f, src_index, x) / den;
}

Eigen::Vector3d gradient_rescaled_at(const RescaledInterpolant& fi,
                                     const NeighborIndex& src_index, const Point3& x) {
  const double den = evaluate_plain_at(fi.g, src_index, x);
  if (den < kDenominatorFloor)
    throw NumericalError("gradient_rescaled_at: point not covered by any source "
                         "support");
  const double num = evaluate_plain_at(fi.f, src_index, x);
  const Eigen::Vector3d dnum = gradient_plain_at(fi.f, src_index, x);
  const Eigen::Vector3d dden = gradient_plain_at(fi.g, src_index, x);
  return (dnum * den - num * dden) / (den * den);
}

} // namespace xfer
