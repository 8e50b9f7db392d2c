#pragma once

#include <Eigen/Core>

namespace xfer {

/// Interpolated quaternions with norm below this floor are degenerate; the
/// transfer errors out instead of fabricating a rotation.
inline constexpr double kQuaternionNormFloor = 1e-6;

/// Unit quaternion, scalar part first. The hemisphere convention (a >= 0,
/// ties broken by b > 0, then c > 0, then d > 0) makes the rotation ->
/// quaternion map single-valued, which linear interpolation of quaternion
/// fields requires.
struct Quaternion {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double norm() const;
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// R must satisfy R^T R = I and det R = +1 within 1e-10. The result is the
/// hemisphere-normalized unit quaternion whose rotation equals R to ~1e-12.
Quaternion rotation_to_quaternion(const Eigen::Matrix3d& R);

/// Normalizes q (throws NumericalError below kQuaternionNormFloor) and
/// applies the standard quaternion-to-matrix map; the result is a proper
/// rotation to ~1e-12.
Eigen::Matrix3d quaternion_to_rotation(const Quaternion& q);

} // namespace xfer
