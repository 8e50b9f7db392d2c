#pragma once

#include <Eigen/Core>

namespace xfer {

using Tensor3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Exact 3x3 determinant (cofactor expansion).
double det3(const Tensor3& F);

/// U, V orthogonal (possibly reflections), sigma >= 0 in decreasing order;
/// U * diag(sigma) * V^T reconstructs the input to ~1e-12 relative.
struct RawSVD {
  Eigen::Matrix3d U;
  Eigen::Vector3d sigma;
  Eigen::Matrix3d V;
};

/// Deterministic 3x3 SVD for a given input bit pattern.
RawSVD svd3(const Tensor3& F);

} // namespace xfer
