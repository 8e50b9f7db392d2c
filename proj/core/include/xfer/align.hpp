#pragma once

#include <Eigen/Core>

#include "xfer/quaternion.hpp"
#include "xfer/tensor.hpp"

namespace xfer {

/// Orthonormal right-handed reference triplet (columns w1, w2, w3). Default:
/// the canonical basis.
struct ReferenceTriplet {
  Eigen::Matrix3d w = Eigen::Matrix3d::Identity();

  void validate() const;
};

/// SVD factors after singular-vector alignment: U and V are proper rotations
/// (det = +1), sigma > 0 in reference order rather than decreasing order,
/// and qU, qV are the hemisphere-normalized quaternion forms.
struct AlignedSVD {
  Eigen::Matrix3d U;
  Eigen::Vector3d sigma;
  Eigen::Matrix3d V;
  Quaternion qU;
  Quaternion qV;
};

/// Matches singular values across points by aligning the right singular
/// vectors with the reference triplet:
///   j_k = argmax over remaining of |w^k . v_j| (ties toward the smaller
///   index), flipping the (v, u) pair sign when w^k . v < 0; the third
///   column's sign makes det(V) = +1; sigma and the U columns are permuted
///   and flipped in lockstep.
///
/// The input must factor a positive-determinant tensor: all sigma > 0 and
/// det(U) * det(V) = +1. The output is invariant under any valid re-gauging
/// (paired column sign flips / simultaneous permutations) of the input.
AlignedSVD align_svd(const RawSVD& raw,
                     const ReferenceTriplet& ref = ReferenceTriplet{});

} // namespace xfer
