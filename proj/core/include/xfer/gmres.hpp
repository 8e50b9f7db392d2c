#pragma once

#include <functional>
#include <span>
#include <vector>

#include "xfer/sparse.hpp"

namespace xfer {

struct SolverConfig {
  double tolerance = 1e-10; // relative residual target
  int max_iterations = 1000;
  int restart = 50;

  void validate() const;
};

struct SolveStats {
  int iterations = 0;        // Arnoldi steps across all restart cycles
  double residual = 0.0;     // true relative residual ||b - Ax|| / ||b||
  bool converged = false;
  bool breakdown = false;    // Arnoldi norm hit zero without reaching tolerance
};

/// Applies a preconditioner: out = P^{-1} in.
using PrecondApply = std::function<void(std::span<const double>, std::span<double>)>;

struct SolveResult {
  std::vector<double> x;
  SolveStats stats;
};

/// Restarted GMRES with right preconditioning (solve A P^{-1} y = b,
/// x = P^{-1} y), so the reported residual is that of the original system.
/// stats.residual is always recomputed from A and x, never the Arnoldi
/// estimate.
SolveResult gmres(const SparseMatrix& A, std::span<const double> b,
                  const PrecondApply& precond, const SolverConfig& cfg);

/// Convenience: preconditioner given as a sparse matrix (out = M in).
SolveResult gmres(const SparseMatrix& A, std::span<const double> b,
                  const SparseMatrix& precond_matrix, const SolverConfig& cfg);

/// Unpreconditioned.
SolveResult gmres(const SparseMatrix& A, std::span<const double> b,
                  const SolverConfig& cfg);

/// `sweeps` forward Gauss-Seidel sweeps on A x = r starting from zero.
/// Rows must have a nonzero diagonal entry.
std::vector<double> gauss_seidel_apply(const SparseMatrix& A,
                                       std::span<const double> r, int sweeps);

} // namespace xfer
