#include "xfer/align.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "xfer/errors.hpp"

namespace xfer {

void ReferenceTriplet::validate() const {
  if ((w.transpose() * w - Eigen::Matrix3d::Identity()).norm() > 1e-10)
    throw std::invalid_argument("ReferenceTriplet: columns must be orthonormal");
  if (w.determinant() < 0.0)
    throw std::invalid_argument("ReferenceTriplet: triplet must be right-handed");
}

AlignedSVD align_svd(const RawSVD& raw, const ReferenceTriplet& ref) {
  ref.validate();

  for (int i = 0; i < 3; ++i)
    if (!(raw.sigma(i) > 0.0))
      throw NumericalError("align_svd: zero singular value (index " +
                           std::to_string(i) + ")");
  if (raw.U.determinant() * raw.V.determinant() <= 0.0)
    throw NumericalError("align_svd: factors reconstruct a tensor with "
                         "non-positive determinant");

  bool taken[3] = {false, false, false};
  Eigen::Matrix3d U, V;
  Eigen::Vector3d sigma;

  // First two columns: most-aligned remaining right singular vector, sign
  // flipped (as a (v, u) pair) toward the reference direction.
  for (int k = 0; k < 2; ++k) {
    int best = -1;
    double best_score = -1.0;
    for (int i = 0; i < 3; ++i) {
      if (taken[i]) continue;
      const double score = std::abs(ref.w.col(k).dot(raw.V.col(i)));
      if (score > best_score) { // strict: ties resolve to the smaller index
        best_score = score;
        best = i;
      }
    }
    taken[best] = true;
    const double sign = ref.w.col(k).dot(raw.V.col(best)) < 0.0 ? -1.0 : 1.0;
    V.col(k) = sign * raw.V.col(best);
    U.col(k) = sign * raw.U.col(best);
    sigma(k) = raw.sigma(best);
  }

  // Last column: sign chosen so det(V) = +1. det(U) then equals +1 as well,
  // because paired flips and simultaneous permutations preserve
  // det(U) * det(V) = +1.
  const int rest = taken[0] ? (taken[1] ? 2 : 1) : 0;
  const double sign =
      V.col(0).cross(V.col(1)).dot(raw.V.col(rest)) < 0.0 ? -1.0 : 1.0;
  V.col(2) = sign * raw.V.col(rest);
  U.col(2) = sign * raw.U.col(rest);
  sigma(2) = raw.sigma(rest);

  AlignedSVD out{U, sigma, V, rotation_to_quaternion(U), rotation_to_quaternion(V)};
  return out;
}

} // namespace xfer
