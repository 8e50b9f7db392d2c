#include "xfer/gmres.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace xfer {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0))
    throw std::invalid_argument("SolverConfig: tolerance must be in (0, 1)");
  if (max_iterations < 1)
    throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
  if (restart < 1) throw std::invalid_argument("SolverConfig: restart must be >= 1");
}

SolveResult gmres(const SparseMatrix& A, std::span<const double> b,
                  const PrecondApply& precond, const SolverConfig& cfg) {
  cfg.validate();
  if (A.rows() != A.cols())
    throw std::invalid_argument("gmres: matrix must be square");
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (b.size() != n) throw std::invalid_argument("gmres: rhs size mismatch");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("gmres: non-finite rhs");

  SolveResult out;
  out.x.assign(n, 0.0);

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.stats.converged = true;
    return out;
  }

  const int m = cfg.restart;
  std::vector<std::vector<double>> V(static_cast<std::size_t>(m) + 1,
                                     std::vector<double>(n));
  std::vector<double> H(static_cast<std::size_t>(m + 1) * m, 0.0); // column-major
  auto h = [&](int i, int j) -> double& {
    return H[static_cast<std::size_t>(j) * (m + 1) + i];
  };
  std::vector<double> cs(m), sn(m), g(static_cast<std::size_t>(m) + 1);
  std::vector<double> w(n), z(n), r(n);

  double anorm_est = 0.0; // running estimate of ||A P^{-1}|| for breakdown scale
  bool hit_breakdown = false;
  int total_iters = 0;
  double true_res = 1.0;

  while (true) {
    // r = b - A x (x = 0 in the first cycle).
    spmv_into(A, out.x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double beta = norm2(r);
    true_res = beta / bnorm;
    if (true_res <= cfg.tolerance) {
      out.stats.converged = true;
      break;
    }
    if (total_iters >= cfg.max_iterations || hit_breakdown) break;

    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::fill(H.begin(), H.end(), 0.0);

    int cols = 0;
    bool happy = false;
    for (int j = 0; j < m && total_iters < cfg.max_iterations; ++j) {
      ++total_iters;
      if (precond) {
        precond(V[static_cast<std::size_t>(j)], z);
        spmv_into(A, z, w);
      } else {
        spmv_into(A, V[static_cast<std::size_t>(j)], w);
      }
      anorm_est = std::max(anorm_est, norm2(w));

      // Modified Gram-Schmidt.
      for (int i = 0; i <= j; ++i) {
        const double hij = dot(w, V[static_cast<std::size_t>(i)]);
        h(i, j) = hij;
        for (std::size_t l = 0; l < n; ++l) w[l] -= hij * V[static_cast<std::size_t>(i)][l];
      }
      const double wnorm = norm2(w);
      h(j + 1, j) = wnorm;
      happy = wnorm <= 1e-14 * std::max(anorm_est, 1e-300);
      if (!happy)
        for (std::size_t l = 0; l < n; ++l) V[static_cast<std::size_t>(j) + 1][l] = w[l] / wnorm;

      // Apply accumulated Givens rotations to the new column, then form the
      // rotation that annihilates h(j+1, j).
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = h(j, j) / denom;
        sn[j] = h(j + 1, j) / denom;
      }
      h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
      h(j + 1, j) = 0.0;
      g[static_cast<std::size_t>(j) + 1] = -sn[j] * g[static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(j)] = cs[j] * g[static_cast<std::size_t>(j)];

      cols = j + 1;
      const double est = std::abs(g[static_cast<std::size_t>(j) + 1]) / bnorm;
      if (happy || est <= cfg.tolerance) break;
    }

    if (cols == 0) break; // iteration budget exhausted before any step

    // Back-substitute H y = g.
    std::vector<double> y(static_cast<std::size_t>(cols));
    for (int i = cols - 1; i >= 0; --i) {
      double s = g[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < cols; ++k) s -= h(i, k) * y[static_cast<std::size_t>(k)];
      if (h(i, i) == 0.0) {
        hit_breakdown = true;
        y[static_cast<std::size_t>(i)] = 0.0;
      } else {
        y[static_cast<std::size_t>(i)] = s / h(i, i);
      }
    }

    // x += P^{-1} (V y)  (or V y unpreconditioned).
    std::fill(w.begin(), w.end(), 0.0);
    for (int k = 0; k < cols; ++k)
      for (std::size_t l = 0; l < n; ++l)
        w[l] += y[static_cast<std::size_t>(k)] * V[static_cast<std::size_t>(k)][l];
    if (precond) {
      precond(w, z);
      for (std::size_t l = 0; l < n; ++l) out.x[l] += z[l];
    } else {
      for (std::size_t l = 0; l < n; ++l) out.x[l] += w[l];
    }

    if (happy) hit_breakdown = true; // resolved next loop: converged or breakdown
  }

  out.stats.iterations = total_iters;
  out.stats.residual = true_res;
  out.stats.breakdown = hit_breakdown && !out.stats.converged;
  return out;
}

SolveResult gmres(const SparseMatrix& A, std::span<const double> b,
                  const SparseMatrix& precond_matrix, const SolverConfig& cfg) {
  if (precond_matrix.rows() != A.rows() || precond_matrix.cols() != A.cols())
    throw std::invalid_argument("gmres: preconditioner dimension mismatch");
  PrecondApply apply = [&precond_matrix](std::span<const double> in,
                                         std::span<double> out) {
    spmv_into(precond_matrix, in, out);
  };
  return gmres(A, b, apply, cfg);
}

SolveResult gmres(const SparseMatrix& A, std::span<const double> b,
                  const SolverConfig& cfg) {
  return gmres(A, b, PrecondApply{}, cfg);
}

std::vector<double> gauss_seidel_apply(const SparseMatrix& A,
                                       std::span<const double> r, int sweeps) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("gauss_seidel_apply: matrix must be square");
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (r.size() != n)
    throw std::invalid_argument("gauss_seidel_apply: rhs size mismatch");
  if (sweeps < 1) throw std::invalid_argument("gauss_seidel_apply: sweeps must be >= 1");

  const auto offsets = A.row_offsets();
  const auto cols = A.col_indices();
  const auto vals = A.values();

  // Locate diagonal entries up front; a missing or zero diagonal is an error.
  std::vector<std::size_t> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::int64_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      if (cols[static_cast<std::size_t>(k)] == static_cast<std::int32_t>(i)) {
        if (vals[static_cast<std::size_t>(k)] == 0.0) break;
        diag[i] = static_cast<std::size_t>(k);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("gauss_seidel_apply: zero diagonal at row " +
                                  std::to_string(i));
  }

  std::vector<double> x(n, 0.0);
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = r[i];
      for (std::int64_t k = offsets[i]; k < offsets[i + 1]; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        if (kk == diag[i]) continue;
        acc -= vals[kk] * x[static_cast<std::size_t>(cols[kk])];
      }
      x[i] = acc / vals[diag[i]];
    }
  }
  return x;
}

} // namespace xfer
