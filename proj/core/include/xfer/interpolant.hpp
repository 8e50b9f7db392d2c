#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "xfer/gmres.hpp"
#include "xfer/kd_tree.hpp"
#include "xfer/point_set.hpp"
#include "xfer/sparse.hpp"

namespace xfer {

/// Destinations where the all-ones interpolant evaluates below this floor
/// are not covered by any source support; transferring there is an error,
/// not an extrapolation.
inline constexpr double kDenominatorFloor = 1e-8;

/// RBF interpolant: coefficients gamma plus the source geometry needed to
/// evaluate it anywhere.
struct Interpolant {
  PointSet src;
  std::vector<double> radii;
  std::vector<double> gamma;
};

/// Data interpolant paired with the interpolant of the constant 1 on the
/// same cloud; evaluation is the quotient of the two.
struct RescaledInterpolant {
  Interpolant f;
  Interpolant g;
};

/// Solves Phi_int gamma = values with right-preconditioned GMRES.
/// Throws NumericalError on non-convergence.
Interpolant build_interpolant(const PointSet& src, std::span<const double> values,
                              std::span<const double> radii,
                              const SparseMatrix& phi_int,
                              const SparseMatrix& precond,
                              const SolverConfig& cfg,
                              SolveStats* stats = nullptr);

/// Componentwise (Phi_eval gamma_f) / (Phi_eval gamma_g). A destination with
/// denominator below kDenominatorFloor throws NumericalError naming the
/// point.
std::vector<double> evaluate_rescaled(const RescaledInterpolant& fi,
                                      const SparseMatrix& phi_eval);

/// Pointwise evaluation of the plain interpolant Pi f(x) (candidates via a
/// radius query with the largest support radius).
double evaluate_plain_at(const Interpolant& f, const NeighborIndex& src_index,
                         const Point3& x);

/// Spatial gradient of the plain interpolant at x (closed-form kernel
/// gradient; finite at source points).
Eigen::Vector3d gradient_plain_at(const Interpolant& f,
                                  const NeighborIndex& src_index, const Point3& x);

/// Pointwise rescaled value Pi f(x) / Pi g(x), floor-checked.
double evaluate_rescaled_at(const RescaledInterpolant& fi,
                            const NeighborIndex& src_index, const Point3& x);

/// Gradient of the rescaled interpolant by the quotient rule.
Eigen::Vector3d gradient_rescaled_at(const RescaledInterpolant& fi,
                                     const NeighborIndex& src_index, const Point3& x);

} // namespace xfer
