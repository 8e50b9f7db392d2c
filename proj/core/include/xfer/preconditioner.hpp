#pragma once

#include <span>

#include "xfer/gmres.hpp"
#include "xfer/point_set.hpp"
#include "xfer/sparse.hpp"

namespace xfer {

/// Default relative tolerance for the inner cardinal-function solves.
inline constexpr double kInnerCardinalTolerance = 1e-1;

/// Local systems up to this size are solved with a dense direct
/// factorization; larger ones fall back to GMRES with a Gauss-Seidel
/// preconditioner at the inner tolerance.
inline constexpr int kDenseLocalSolveLimit = 64;

inline SolverConfig default_inner_config() {
  return SolverConfig{kInnerCardinalTolerance, 200, 50};
}

/// Approximate-cardinal-function preconditioner.
///
/// For each source point i, take S^i = nonzero columns of row i of Phi_int,
/// solve the local dense system L^i lambda^i = e_i with
/// L^i_{lm} = phi(||x_{s_l} - x_{s_m}||, r_{s_m}), and scatter lambda^i into
/// column i of P^{-1} at rows S^i. A failed local solve reports the point
/// index.
SparseMatrix build_cardinal_preconditioner(
    const SparseMatrix& phi_int, const PointSet& src,
    std::span<const double> radii,
    const SolverConfig& inner_cfg = default_inner_config());

} // namespace xfer
