#pragma once

#include <cstdint>
#include <span>

#include "xfer/kd_tree.hpp"
#include "xfer/sparse.hpp"

namespace xfer {

/// Interpolation matrix over the source cloud:
/// (Phi_int)_{ij} = phi(||x_i - x_j||, r_j). The support radius belongs to
/// the column point, so the matrix is generally not symmetric. The sparsity
/// pattern is exactly { (i, j) : ||x_i - x_j|| < r_j }; the diagonal is 1.
SparseMatrix assemble_interp_matrix(const NeighborIndex& src_index,
                                    std::span<const double> radii);

/// Evaluation matrix, rows over the destination cloud:
/// (Phi_eval)_{ij} = phi(||x^dst_i - x^src_j||, r_j).
SparseMatrix assemble_eval_matrix(const PointSet& dst,
                                  const NeighborIndex& src_index,
                                  std::span<const double> radii);

namespace counters {

/// Monotone process-wide assembly counters, for tests asserting that built
/// operators are reused rather than re-assembled.
std::uint64_t interp_assemblies();
std::uint64_t eval_assemblies();
std::uint64_t preconditioner_builds();
void bump_preconditioner_builds();

} // namespace counters

} // namespace xfer
