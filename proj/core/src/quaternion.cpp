#include "xfer/quaternion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "xfer/errors.hpp"

namespace xfer {

double Quaternion::norm() const {
  return std::sqrt(a * a + b * b + c * c + d * d);
}

namespace {

Quaternion hemisphere_normalize(Quaternion q) {
  bool flip = false;
  if (q.a < 0.0)
    flip = true;
  else if (q.a == 0.0) {
    if (q.b < 0.0)
      flip = true;
    else if (q.b == 0.0) {
      if (q.c < 0.0)
        flip = true;
      else if (q.c == 0.0 && q.d < 0.0)
        flip = true;
    }
  }
  if (flip) {
    q.a = -q.a;
    q.b = -q.b;
    q.c = -q.c;
    q.d = -q.d;
  }
  return q;
}

} // namespace

Quaternion rotation_to_quaternion(const Eigen::Matrix3d& R) {
  const double ortho = (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
  if (ortho > 1e-10)
    throw std::invalid_argument("rotation_to_quaternion: input not orthogonal "
                                "(||R^T R - I|| = " + std::to_string(ortho) + ")");
  const double det = R.determinant();
  if (std::abs(det - 1.0) > 1e-10)
    throw std::invalid_argument("rotation_to_quaternion: input is a reflection "
                                "(det = " + std::to_string(det) + ")");

  // Shepperd's branch selection: take the largest of the four squared
  // components so the divisor never degenerates.
  Quaternion q;
  const double tr = R(0, 0) + R(1, 1) + R(2, 2);
  if (tr > R(0, 0) && tr > R(1, 1) && tr > R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q.a = 0.25 * s;
    q.b = (R(2, 1) - R(1, 2)) / s;
    q.c = (R(0, 2) - R(2, 0)) / s;
    q.d = (R(1, 0) - R(0, 1)) / s;
  } else if (R(0, 0) > R(1, 1) && R(0, 0) > R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2));
    q.a = (R(2, 1) - R(1, 2)) / s;
    q.b = 0.25 * s;
    q.c = (R(0, 1) + R(1, 0)) / s;
    q.d = (R(0, 2) + R(2, 0)) / s;
  } else if (R(1, 1) > R(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + R(1, 1) - R(0, 0) - R(2, 2));
    q.a = (R(0, 2) - R(2, 0)) / s;
    q.b = (R(0, 1) + R(1, 0)) / s;
    q.c = 0.25 * s;
    q.d = (R(1, 2) + R(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + R(2, 2) - R(0, 0) - R(1, 1));
    q.a = (R(1, 0) - R(0, 1)) / s;
    q.b = (R(0, 2) + R(2, 0)) / s;
    q.c = (R(1, 2) + R(2, 1)) / s;
    q.d = 0.25 * s;
  }

  const double n = q.norm();
  q.a /= n;
  q.b /= n;
  q.c /= n;
  q.d /= n;
  return hemisphere_normalize(q);
}

Eigen::Matrix3d quaternion_to_rotation(const Quaternion& q) {
  const double n = q.norm();
  if (n < kQuaternionNormFloor)
    throw NumericalError("quaternion_to_rotation: degenerate quaternion (norm " +
                         std::to_string(n) + " below floor)");
  const double a = q.a / n, b = q.b / n, c = q.c / n, d = q.d / n;

  Eigen::Matrix3d R;
  R(0, 0) = 1.0 - 2.0 * (c * c + d * d);
  R(0, 1) = 2.0 * (b * c - a * d);
  R(0, 2) = 2.0 * (b * d + a * c);
  R(1, 0) = 2.0 * (b * c + a * d);
  R(1, 1) = 1.0 - 2.0 * (b * b + d * d);
  R(1, 2) = 2.0 * (c * d - a * b);
  R(2, 0) = 2.0 * (b * d - a * c);
  R(2, 1) = 2.0 * (c * d + a * b);
  R(2, 2) = 1.0 - 2.0 * (b * b + c * c);
  return R;
}

} // namespace xfer
