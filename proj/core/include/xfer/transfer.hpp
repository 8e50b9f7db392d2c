#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfer/align.hpp"
#include "xfer/gmres.hpp"
#include "xfer/interpolant.hpp"
#include "xfer/kd_tree.hpp"
#include "xfer/point_set.hpp"
#include "xfer/radii.hpp"
#include "xfer/sparse.hpp"
#include "xfer/tensor.hpp"

namespace xfer {

enum class MethodKind {
  RbfDGrad,       // displacement transfer, gradient of the rescaled interpolant
  RbfFEuclidean,  // componentwise tensor transfer
  RbfFSvd,        // SVD/quaternion pipeline, det > 0 by construction
};

std::string to_string(MethodKind m);
std::optional<MethodKind> method_from_string(std::string_view name);

/// Adaptive-radius defaults per transferred quantity.
RadiusConfig default_radius_for(MethodKind m);
inline constexpr RadiusConfig kScalarRadiusDefault{1, 2.5};

/// Rotation fields whose quaternions approach the a = 0 hemisphere boundary
/// (angle near pi) are flagged: the gauge is discontinuous there.
inline constexpr double kGaugeNearPiThreshold = 1e-2;

/// Per-point 3x3 tensor samples over a cloud.
struct TensorField {
  PointSet points;
  std::vector<Tensor3> samples;

  void validate() const;
};

/// All geometry-dependent state for transfers between one cloud pair:
/// radii, Phi_int, Phi_eval, P^{-1}, and the solved all-ones coefficients.
/// Built once and reused across fields; transfer calls never re-assemble
/// (see counters in assembly.hpp). Immutable after construction and safe
/// for concurrent transfers of independent fields.
class TransferOperator {
public:
  /// Throws NumericalError if some destination is not covered by any source
  /// support (all-ones evaluation below kDenominatorFloor), naming the point.
  TransferOperator(PointSet src, PointSet dst, RadiusConfig radius_cfg,
                   SolverConfig solver_cfg,
                   ReferenceTriplet ref = ReferenceTriplet{});

  const PointSet& source() const { return src_; }
  const PointSet& destination() const { return dst_; }
  const std::vector<double>& radii() const { return radii_; }
  const SparseMatrix& interp_matrix() const { return phi_int_; }
  const SparseMatrix& eval_matrix() const { return phi_eval_; }
  const SparseMatrix& preconditioner() const { return precond_; }
  const Interpolant& ones_interpolant() const { return *ones_; }
  std::span<const double> denominators() const { return denominators_; }
  const SolveStats& ones_solve_stats() const { return ones_stats_; }
  const ReferenceTriplet& reference() const { return ref_; }
  const SolverConfig& solver_config() const { return solver_cfg_; }
  const RadiusConfig& radius_config() const { return radius_cfg_; }
  const NeighborIndex& source_index() const { return src_index_; }

  /// Rescaled RBF transfer of one scalar field sampled on the source cloud.
  std::vector<double> transfer_scalar(std::span<const double> values,
                                      SolveStats* stats = nullptr) const;

  /// Nine independent scalar transfers, one per tensor component (bitwise
  /// equal to nine transfer_scalar calls).
  TensorField transfer_tensor_euclidean(const TensorField& field,
                                        std::vector<SolveStats>* stats = nullptr) const;

  struct SvdInfo {
    std::vector<SolveStats> solves;       // 11 entries
    double min_quaternion_scalar = 1.0;   // min over source qU, qV scalar parts
    bool gauge_near_pi = false;
    /// Per destination: sum of the three interpolated log singular values;
    /// det of the output equals exp of this sum up to rotation rounding.
    std::vector<double> log_sigma_sum;
  };

  /// Positivity-preserving transfer: per-point aligned SVD, hemisphere-
  /// normalized quaternions, rescaled interpolation of 8 quaternion
  /// components and 3 log singular values, recomposition F = U Sigma V^T.
  /// Every output determinant is a product of exponentials, hence positive.
  TensorField transfer_tensor_svd(const TensorField& field,
                                  SvdInfo* info = nullptr) const;

  /// Baseline: F = I + grad of the rescaled displacement interpolant,
  /// evaluated with the closed-form kernel gradient. No determinant control.
  TensorField transfer_displacement_gradient(std::span<const Vec3> displacement,
                                             std::vector<SolveStats>* stats = nullptr) const;

  /// Coefficients for one scalar field (shared matrices, shared solver).
  Interpolant build_scalar_interpolant(std::span<const double> values,
                                       SolveStats* stats = nullptr) const;

  /// Pointwise rescaled evaluation/gradient anywhere in the covered region
  /// (used by oracles and diagnostics; the batch paths use Phi_eval).
  double rescaled_value_at(const Interpolant& f, const Point3& x) const;
  Vec3 rescaled_gradient_at(const Interpolant& f, const Point3& x) const;

private:
  void require_source_field_size(std::size_t n, const char* what) const;

  PointSet src_;
  PointSet dst_;
  RadiusConfig radius_cfg_;
  SolverConfig solver_cfg_;
  ReferenceTriplet ref_;
  NeighborIndex src_index_;
  std::vector<double> radii_;
  SparseMatrix phi_int_;
  SparseMatrix phi_eval_;
  SparseMatrix precond_;
  std::optional<Interpolant> ones_; // set once at the end of construction
  SolveStats ones_stats_;
  std::vector<double> denominators_;
};

} // namespace xfer
