#include "xfer/transfer.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "xfer/assembly.hpp"
#include "xfer/errors.hpp"
#include "xfer/parallel.hpp"
#include "xfer/preconditioner.hpp"
#include "xfer/wendland.hpp"

namespace xfer {

std::string to_string(MethodKind m) {
  switch (m) {
    case MethodKind::RbfDGrad: return "rbf-d";
    case MethodKind::RbfFEuclidean: return "rbf-f-e";
    case MethodKind::RbfFSvd: return "rbf-f-svd";
  }
  return "?";
}

std::optional<MethodKind> method_from_string(std::string_view name) {
  if (name == "rbf-d") return MethodKind::RbfDGrad;
  if (name == "rbf-f-e") return MethodKind::RbfFEuclidean;
  if (name == "rbf-f-svd") return MethodKind::RbfFSvd;
  return std::nullopt;
}

RadiusConfig default_radius_for(MethodKind m) {
  switch (m) {
    case MethodKind::RbfDGrad: return RadiusConfig{5, 3.0};
    case MethodKind::RbfFEuclidean: return RadiusConfig{2, 2.0};
    case MethodKind::RbfFSvd: return RadiusConfig{2, 2.0};
  }
  return RadiusConfig{};
}

void TensorField::validate() const {
  if (samples.size() != points.size())
    throw std::invalid_argument("TensorField: sample count " +
                                std::to_string(samples.size()) + " != point count " +
                                std::to_string(points.size()));
}

TransferOperator::TransferOperator(PointSet src, PointSet dst,
                                   RadiusConfig radius_cfg, SolverConfig solver_cfg,
                                   ReferenceTriplet ref)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      radius_cfg_(radius_cfg),
      solver_cfg_(solver_cfg),
      ref_(ref),
      src_index_(src_) {
  radius_cfg_.validate();
  solver_cfg_.validate();
  ref_.validate();
  if (!src_.source_grade())
    throw std::invalid_argument("TransferOperator: source cloud must be built "
                                "with PointSet::source (distinct points)");

  radii_ = adaptive_radii(src_index_, radius_cfg_);
  phi_int_ = assemble_interp_matrix(src_index_, radii_);
  phi_eval_ = assemble_eval_matrix(dst_, src_index_, radii_);
  precond_ = build_cardinal_preconditioner(phi_int_, src_, radii_);

  const std::vector<double> ones(src_.size(), 1.0);
  ones_ = build_interpolant(src_, ones, radii_, phi_int_, precond_, solver_cfg_,
                            &ones_stats_);

  denominators_ = spmv(phi_eval_, ones_->gamma);
  for (std::size_t i = 0; i < denominators_.size(); ++i)
    if (denominators_[i] < kDenominatorFloor)
      throw NumericalError("TransferOperator: destination point " + std::to_string(i) +
                           " is not covered by any source support (denominator " +
                           std::to_string(denominators_[i]) + ")");
}

void TransferOperator::require_source_field_size(std::size_t n, const char* what) const {
  if (n != src_.size())
    throw std::invalid_argument(std::string(what) + ": field size " + std::to_string(n) +
                                " != source count " + std::to_string(src_.size()));
}

Interpolant TransferOperator::build_scalar_interpolant(std::span<const double> values,
                                                       SolveStats* stats) const {
  require_source_field_size(values.size(), "build_scalar_interpolant");
  return build_interpolant(src_, values, radii_, phi_int_, precond_, solver_cfg_, stats);
}

std::vector<double> TransferOperator::transfer_scalar(std::span<const double> values,
                                                      SolveStats* stats) const {
  const Interpolant f = build_scalar_interpolant(values, stats);
  std::vector<double> out = spmv(phi_eval_, f.gamma);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= denominators_[i];
  return out;
}

TensorField TransferOperator::transfer_tensor_euclidean(
    const TensorField& field, std::vector<SolveStats>* stats) const {
  field.validate();
  require_source_field_size(field.samples.size(), "transfer_tensor_euclidean");
  if (!(field.points == src_))
    throw std::invalid_argument("transfer_tensor_euclidean: field is not sampled "
                                "on the operator's source cloud");

  if (stats) stats->assign(9, SolveStats{});
  const std::size_t n_src = src_.size();
  const std::size_t n_dst = dst_.size();

  TensorField out{dst_, std::vector<Tensor3>(n_dst)};
  std::vector<double> component(n_src);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < n_src; ++i) component[i] = field.samples[i](r, c);
      SolveStats st;
      const std::vector<double> vals = transfer_scalar(component, &st);
      if (stats) (*stats)[static_cast<std::size_t>(3 * r + c)] = st;
      for (std::size_t i = 0; i < n_dst; ++i) out.samples[i](r, c) = vals[i];
    }
  return out;
}

TensorField TransferOperator::transfer_tensor_svd(const TensorField& field,
                                                  SvdInfo* info) const {
  field.validate();
  require_source_field_size(field.samples.size(), "transfer_tensor_svd");
  if (!(field.points == src_))
    throw std::invalid_argument("transfer_tensor_svd: field is not sampled on "
                                "the operator's source cloud");

  const std::size_t n_src = src_.size();
  const std::size_t n_dst = dst_.size();

  // A single bad sample poisons all 11 interpolants; check eagerly.
  for (std::size_t i = 0; i < n_src; ++i) {
    const double d = det3(field.samples[i]);
    if (!(d > 0.0))
      throw NumericalError("transfer_tensor_svd: source sample " + std::to_string(i) +
                           " has det = " + std::to_string(d) + " <= 0");
  }

  // Decompose and align every source tensor.
  std::vector<AlignedSVD> aligned(n_src);
  double min_scalar = 1.0;
  std::mutex min_mutex;
  parallel_for(static_cast<std::int64_t>(n_src), [&](std::int64_t lo, std::int64_t hi) {
    double local_min = 1.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      try {
        aligned[k] = align_svd(svd3(field.samples[k]), ref_);
      } catch (const NumericalError& e) {
        throw NumericalError("transfer_tensor_svd: source sample " + std::to_string(k) +
                             ": " + e.what());
      }
      local_min = std::min({local_min, aligned[k].qU.a, aligned[k].qV.a});
    }
    std::lock_guard<std::mutex> lock(min_mutex);
    min_scalar = std::min(min_scalar, local_min);
  });

  // The 11 scalar fields of the pipeline.
  constexpr int kFields = 11;
  std::vector<std::vector<double>> data(kFields, std::vector<double>(n_src));
  for (std::size_t i = 0; i < n_src; ++i) {
    const AlignedSVD& a = aligned[i];
    data[0][i] = a.qU.a;
    data[1][i] = a.qU.b;
    data[2][i] = a.qU.c;
    data[3][i] = a.qU.d;
    data[4][i] = a.qV.a;
    data[5][i] = a.qV.b;
    data[6][i] = a.qV.c;
    data[7][i] = a.qV.d;
    data[8][i] = std::log(a.sigma(0));
    data[9][i] = std::log(a.sigma(1));
    data[10][i] = std::log(a.sigma(2));
  }

  if (info) {
    info->solves.assign(kFields, SolveStats{});
    info->min_quaternion_scalar = min_scalar;
    info->gauge_near_pi = min_scalar < kGaugeNearPiThreshold;
    info->log_sigma_sum.assign(n_dst, 0.0);
  }

  // Shared Phi_int and P^{-1} across all 11 solves and evaluations.
  std::vector<std::vector<double>> at_dst(kFields);
  for (int f = 0; f < kFields; ++f) {
    SolveStats st;
    const Interpolant interp = build_scalar_interpolant(data[static_cast<std::size_t>(f)], &st);
    if (info) info->solves[static_cast<std::size_t>(f)] = st;
    at_dst[static_cast<std::size_t>(f)] = spmv(phi_eval_, interp.gamma);
    for (std::size_t i = 0; i < n_dst; ++i)
      at_dst[static_cast<std::size_t>(f)][i] /= denominators_[i];
  }

  // Recompose at every destination.
  TensorField out{dst_, std::vector<Tensor3>(n_dst)};
  parallel_for(static_cast<std::int64_t>(n_dst), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      const Quaternion qu{at_dst[0][k], at_dst[1][k], at_dst[2][k], at_dst[3][k]};
      const Quaternion qv{at_dst[4][k], at_dst[5][k], at_dst[6][k], at_dst[7][k]};
      Eigen::Matrix3d U, V;
      try {
        U = quaternion_to_rotation(qu);
        V = quaternion_to_rotation(qv);
      } catch (const NumericalError& e) {
        throw NumericalError("transfer_tensor_svd: destination point " +
                             std::to_string(k) + ": " + e.what());
      }
      const Eigen::Vector3d sigma(std::exp(at_dst[8][k]), std::exp(at_dst[9][k]),
                                  std::exp(at_dst[10][k]));
      out.samples[k] = U * sigma.asDiagonal() * V.transpose();
      if (info) info->log_sigma_sum[k] = at_dst[8][k] + at_dst[9][k] + at_dst[10][k];
    }
  });
  return out;
}

TensorField TransferOperator::transfer_displacement_gradient(
    std::span<const Vec3> displacement, std::vector<SolveStats>* stats) const {
  require_source_field_size(displacement.size(), "transfer_displacement_gradient");

  const std::size_t n_src = src_.size();
  const std::size_t n_dst = dst_.size();

  if (stats) stats->assign(3, SolveStats{});
  std::vector<std::vector<double>> gamma(3);
  std::vector<double> component(n_src);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < n_src; ++i) component[i] = displacement[i](c);
    SolveStats st;
    gamma[static_cast<std::size_t>(c)] =
        build_scalar_interpolant(component, &st).gamma;
    if (stats) (*stats)[static_cast<std::size_t>(c)] = st;
  }
  const std::vector<double>& gamma_g = ones_->gamma;

  const auto offsets = phi_eval_.row_offsets();
  const auto cols = phi_eval_.col_indices();
  const auto vals = phi_eval_.values();

  TensorField out{dst_, std::vector<Tensor3>(n_dst)};
  parallel_for(static_cast<std::int64_t>(n_dst), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t row = lo; row < hi; ++row) {
      const std::size_t i = static_cast<std::size_t>(row);
      const Point3& x = dst_[i];

      double num[3] = {0.0, 0.0, 0.0};
      Eigen::Vector3d dnum[3] = {Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(),
                                 Eigen::Vector3d::Zero()};
      double den = 0.0;
      Eigen::Vector3d dden = Eigen::Vector3d::Zero();

      for (std::int64_t k = offsets[i]; k < offsets[i + 1]; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        const std::size_t j = static_cast<std::size_t>(cols[kk]);
        const double w = vals[kk]; // phi(||x - x_j||, r_j), already assembled
        const Point3& p = src_[j];
        const double t = distance(x, p);
        const double gf = wendland_grad_factor(t, radii_[j]);
        const Eigen::Vector3d dw = gf * Eigen::Vector3d(x.x - p.x, x.y - p.y, x.z - p.z);

        den += gamma_g[j] * w;
        dden += gamma_g[j] * dw;
        for (int c = 0; c < 3; ++c) {
          num[c] += gamma[static_cast<std::size_t>(c)][j] * w;
          dnum[c] += gamma[static_cast<std::size_t>(c)][j] * dw;
        }
      }

      Tensor3 F = Tensor3::Identity();
      for (int c = 0; c < 3; ++c) {
        const Eigen::Vector3d grad = (dnum[c] * den - num[c] * dden) / (den * den);
        F.row(c) += grad.transpose();
      }
      out.samples[i] = F;
    }
  });
  return out;
}

double TransferOperator::rescaled_value_at(const Interpolant& f, const Point3& x) const {
  return evaluate_rescaled_at(RescaledInterpolant{f, *ones_}, src_index_, x);
}

Vec3 TransferOperator::rescaled_gradient_at(const Interpolant& f, const Point3& x) const {
  return gradient_rescaled_at(RescaledInterpolant{f, *ones_}, src_index_, x);
}

} // namespace xfer
