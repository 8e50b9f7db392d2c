#include "xfer/preconditioner.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "xfer/assembly.hpp"
#include "xfer/errors.hpp"
#include "xfer/parallel.hpp"
#include "xfer/wendland.hpp"

namespace xfer {

namespace {

/// Solves L lambda = e_pos for one local cardinal system.
std::vector<double> solve_local(const Eigen::MatrixXd& L, int pos,
                                const SolverConfig& inner_cfg,
                                std::size_t point_index) {
  const int n = static_cast<int>(L.rows());

  if (n <= kDenseLocalSolveLimit) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(pos) = 1.0;
    Eigen::VectorXd lambda = Eigen::PartialPivLU<Eigen::MatrixXd>(L).solve(e);
    const double res = (L * lambda - e).norm();
    if (!lambda.allFinite() || res > inner_cfg.tolerance)
      throw NumericalError("cardinal preconditioner: dense local solve failed "
                           "at point " + std::to_string(point_index));
    return {lambda.data(), lambda.data() + n};
  }

  // Large local set: same GMRES as everywhere else, Gauss-Seidel inner
  // preconditioner, low accuracy is enough.
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(n) * 8);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (L(i, j) != 0.0) trips.push_back(Triplet{i, j, L(i, j)});
  const SparseMatrix Ls = SparseMatrix::from_triplets(n, n, trips);

  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(pos)] = 1.0;
  PrecondApply gs = [&Ls](std::span<const double> in, std::span<double> out) {
    const auto x = gauss_seidel_apply(Ls, in, 1);
    std::copy(x.begin(), x.end(), out.begin());
  };
  SolveResult res = gmres(Ls, e, gs, inner_cfg);
  if (res.stats.breakdown || !res.stats.converged)
    throw NumericalError("cardinal preconditioner: inner GMRES " +
                         std::string(res.stats.breakdown ? "breakdown" : "non-convergence") +
                         " at point " + std::to_string(point_index));
  return res.x;
}

} // namespace

SparseMatrix build_cardinal_preconditioner(const SparseMatrix& phi_int,
                                           const PointSet& src,
                                           std::span<const double> radii,
                                           const SolverConfig& inner_cfg) {
  inner_cfg.validate();
  const int n = phi_int.rows();
  if (phi_int.cols() != n)
    throw std::invalid_argument("build_cardinal_preconditioner: square matrix required");
  if (src.size() != static_cast<std::size_t>(n) || radii.size() != src.size())
    throw std::invalid_argument("build_cardinal_preconditioner: size mismatch");

  const auto offsets = phi_int.row_offsets();
  const auto cols = phi_int.col_indices();

  std::vector<std::vector<Triplet>> blocks;
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;

  // Column i of P^{-1} is independent of every other column.
  std::mutex collect_mutex;
  parallel_for(n, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<Triplet> local;
    for (std::int64_t i = lo; i < hi; ++i) {
      const std::size_t row = static_cast<std::size_t>(i);
      const std::int64_t begin = offsets[row], end = offsets[row + 1];
      const int ni = static_cast<int>(end - begin);

      // L^i = Phi_int(S^i, S^i) computed from the kernel directly.
      Eigen::MatrixXd L(ni, ni);
      int pos = -1;
      for (int l = 0; l < ni; ++l) {
        const int sl = cols[static_cast<std::size_t>(begin + l)];
        if (sl == static_cast<int>(i)) pos = l;
        for (int m = 0; m < ni; ++m) {
          const int sm = cols[static_cast<std::size_t>(begin + m)];
          const double t = distance(src[static_cast<std::size_t>(sl)],
                                    src[static_cast<std::size_t>(sm)]);
          L(l, m) = t < radii[static_cast<std::size_t>(sm)]
                        ? wendland(t, radii[static_cast<std::size_t>(sm)])
                        : 0.0;
        }
      }
      if (pos < 0)
        throw NumericalError("cardinal preconditioner: row " + std::to_string(i) +
                             " of Phi_int has no diagonal entry");

      const std::vector<double> lambda = solve_local(L, pos, inner_cfg, row);
      for (int m = 0; m < ni; ++m)
        local.push_back(Triplet{cols[static_cast<std::size_t>(begin + m)],
                                static_cast<int>(i), lambda[static_cast<std::size_t>(m)]});
    }
    std::lock_guard<std::mutex> lock(collect_mutex);
    blocks.push_back(std::move(local));
    ranges.emplace_back(lo, hi);
  });

  std::vector<Triplet> trips;
  {
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.size();
    trips.reserve(total);
    // Deterministic order regardless of which thread finished first.
    std::vector<std::size_t> order(blocks.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ranges[a] < ranges[b]; });
    for (std::size_t k : order)
      trips.insert(trips.end(), blocks[k].begin(), blocks[k].end());
  }

  auto P = SparseMatrix::from_triplets(n, n, trips);
  counters::bump_preconditioner_builds();
  return P;
}

} // namespace xfer
