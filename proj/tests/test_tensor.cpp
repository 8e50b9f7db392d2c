#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "xfer/align.hpp"
#include "xfer/errors.hpp"
#include "xfer/fields.hpp"
#include "xfer/quaternion.hpp"
#include "xfer/tensor.hpp"

using namespace xfer;

namespace {

std::mt19937_64 g_rng(12345);

Tensor3 random_tensor(double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Tensor3 f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) = u(g_rng);
  return f;
}

Tensor3 random_positive_tensor() {
  while (true) {
    const Tensor3 f = Tensor3::Identity() + random_tensor(0.9);
    if (det3(f) > 0.05) return f;
  }
}

Eigen::Matrix3d random_rotation() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Vector3d axis;
  do {
    axis = Eigen::Vector3d(u(g_rng), u(g_rng), u(g_rng));
  } while (axis.norm() < 1e-3);
  axis.normalize();
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  return Eigen::AngleAxisd(ang(g_rng), axis).toRotationMatrix();
}

// Independent re-gauging of a raw SVD: simultaneous column permutation plus
// paired sign flips. Leaves U Sigma V^T unchanged.
RawSVD regauge(const RawSVD& raw, std::mt19937_64& rng) {
  std::array<int, 3> perm{0, 1, 2};
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> coin(0, 1);
  RawSVD out;
  for (int k = 0; k < 3; ++k) {
    const double s = coin(rng) ? -1.0 : 1.0;
    out.U.col(k) = s * raw.U.col(perm[static_cast<std::size_t>(k)]);
    out.V.col(k) = s * raw.V.col(perm[static_cast<std::size_t>(k)]);
    out.sigma(k) = raw.sigma(perm[static_cast<std::size_t>(k)]);
  }
  return out;
}

} // namespace

TEST_CASE("det3") {
  CHECK(det3(Tensor3::Identity()) == 1.0);
  CHECK(det3(Eigen::Vector3d(2, 3, 4).asDiagonal().toDenseMatrix()) == 24.0);

  for (int k = 0; k < 200; ++k) {
    const Tensor3 f = random_tensor(2.0);
    const double expect = f.determinant(); // Eigen's LU-based route
    CHECK(det3(f) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("svd3") {
  SUBCASE("identity") {
    const RawSVD s = svd3(Tensor3::Identity());
    for (int i = 0; i < 3; ++i) CHECK(s.sigma(i) == doctest::Approx(1.0));
    CHECK((s.U * s.U.transpose() - Tensor3::Identity()).norm() <= 1e-12);
    CHECK((s.V * s.V.transpose() - Tensor3::Identity()).norm() <= 1e-12);
  }

  SUBCASE("diagonal tensor") {
    const RawSVD s = svd3(Eigen::Vector3d(3, 2, 1).asDiagonal().toDenseMatrix());
    CHECK(s.sigma(0) == doctest::Approx(3.0));
    CHECK(s.sigma(1) == doctest::Approx(2.0));
    CHECK(s.sigma(2) == doctest::Approx(1.0));
    // U and V are signed permutations of the identity.
    for (int c = 0; c < 3; ++c) {
      CHECK(s.U.col(c).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
      CHECK(s.U.col(c).norm() == doctest::Approx(1.0));
    }
  }

  SUBCASE("random tensors: decreasing sigma, orthogonality, reconstruction") {
    for (int k = 0; k < 300; ++k) {
      const Tensor3 f = random_tensor(3.0);
      const RawSVD s = svd3(f);
      CHECK(s.sigma(0) >= s.sigma(1));
      CHECK(s.sigma(1) >= s.sigma(2));
      CHECK(s.sigma(2) >= 0.0);
      CHECK((s.U.transpose() * s.U - Tensor3::Identity()).norm() <= 1e-12);
      CHECK((s.V.transpose() * s.V - Tensor3::Identity()).norm() <= 1e-12);
      const Tensor3 rec = s.U * s.sigma.asDiagonal() * s.V.transpose();
      CHECK((rec - f).norm() <= 1e-12 * std::max(1.0, f.norm()));
    }
  }

  SUBCASE("non-finite input") {
    Tensor3 f = Tensor3::Identity();
    f(1, 1) = std::nan("");
    CHECK_THROWS_AS(svd3(f), std::invalid_argument);
  }
}

TEST_CASE("align_svd") {
  SUBCASE("identity tensor") {
    const AlignedSVD a = align_svd(svd3(Tensor3::Identity()));
    CHECK((a.U - Tensor3::Identity()).norm() <= 1e-12);
    CHECK((a.V - Tensor3::Identity()).norm() <= 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(a.sigma(i) == doctest::Approx(1.0));
    CHECK(a.qU == Quaternion{1, 0, 0, 0});
  }

  SUBCASE("diag(1,2,3): alignment restores natural order") {
    const Tensor3 f = Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix();
    const AlignedSVD a = align_svd(svd3(f));
    CHECK(a.sigma(0) == doctest::Approx(1.0));
    CHECK(a.sigma(1) == doctest::Approx(2.0));
    CHECK(a.sigma(2) == doctest::Approx(3.0));
    CHECK((a.U - Tensor3::Identity()).norm() <= 1e-12);
    CHECK((a.V - Tensor3::Identity()).norm() <= 1e-12);
  }

  SUBCASE("proper rotations and reconstruction for random positive tensors") {
    for (int k = 0; k < 500; ++k) {
      const Tensor3 f = random_positive_tensor();
      const AlignedSVD a = align_svd(svd3(f));
      CHECK(a.U.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(a.V.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      for (int i = 0; i < 3; ++i) CHECK(a.sigma(i) > 0.0);
      const Tensor3 rec = a.U * a.sigma.asDiagonal() * a.V.transpose();
      CHECK((rec - f).norm() <= 1e-12 * std::max(1.0, f.norm()));
      CHECK(a.qU.a >= 0.0);
      CHECK(a.qV.a >= 0.0);
    }
  }

  SUBCASE("output is bitwise invariant under re-gauging of the raw SVD") {
    std::mt19937_64 rng(77);
    for (int k = 0; k < 500; ++k) {
      const Tensor3 f = random_positive_tensor();
      const RawSVD raw = svd3(f);
      const AlignedSVD a = align_svd(raw);
      const AlignedSVD b = align_svd(regauge(raw, rng));
      CHECK((a.U.array() == b.U.array()).all());
      CHECK((a.V.array() == b.V.array()).all());
      CHECK((a.sigma.array() == b.sigma.array()).all());
      CHECK(a.qU == b.qU);
      CHECK(a.qV == b.qV);
    }
  }

  SUBCASE("repeated singular values still reconstruct") {
    const Tensor3 f = Eigen::Vector3d(2, 2, 1).asDiagonal().toDenseMatrix();
    const AlignedSVD a = align_svd(svd3(f));
    const Tensor3 rec = a.U * a.sigma.asDiagonal() * a.V.transpose();
    CHECK((rec - f).norm() <= 1e-12);
  }

  SUBCASE("rejects zero singular values and reflections") {
    RawSVD degenerate{Tensor3::Identity(), Eigen::Vector3d(1, 1, 0),
                      Tensor3::Identity()};
    CHECK_THROWS_AS(align_svd(degenerate), NumericalError);

    RawSVD reflected{Tensor3::Identity(), Eigen::Vector3d(3, 2, 1),
                     Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()};
    CHECK_THROWS_AS(align_svd(reflected), NumericalError);
  }

  SUBCASE("non-canonical reference triplet") {
    // Reference aligned with a rotated frame selects the rotated columns.
    const Eigen::Matrix3d R = axis_rotation(2, 0.3);
    ReferenceTriplet ref{R};
    const Tensor3 f = R * Eigen::Vector3d(1, 2, 3).asDiagonal() * R.transpose();
    const AlignedSVD a = align_svd(svd3(f), ref);
    CHECK(a.sigma(0) == doctest::Approx(1.0));
    CHECK(a.sigma(1) == doctest::Approx(2.0));
    CHECK(a.sigma(2) == doctest::Approx(3.0));
  }

  SUBCASE("invalid reference triplet") {
    ReferenceTriplet bad;
    bad.w.col(0) = Eigen::Vector3d(2, 0, 0);
    CHECK_THROWS_AS(align_svd(svd3(Tensor3::Identity()), bad), std::invalid_argument);

    ReferenceTriplet lefty;
    lefty.w = Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix();
    CHECK_THROWS_AS(align_svd(svd3(Tensor3::Identity()), lefty), std::invalid_argument);
  }
}

TEST_CASE("rotation_to_quaternion") {
  SUBCASE("identity") {
    const Quaternion q = rotation_to_quaternion(Eigen::Matrix3d::Identity());
    CHECK(q == Quaternion{1, 0, 0, 0});
  }

  SUBCASE("quarter turn about z") {
    const Quaternion q = rotation_to_quaternion(axis_rotation(2, std::numbers::pi / 2));
    CHECK(q.a == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(q.b == doctest::Approx(0.0));
    CHECK(q.c == doctest::Approx(0.0));
    CHECK(q.d == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  }

  SUBCASE("rejects non-rotations") {
    CHECK_THROWS_AS(rotation_to_quaternion(2.0 * Eigen::Matrix3d::Identity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(rotation_to_quaternion(
                        Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()),
                    std::invalid_argument);
  }

  SUBCASE("hemisphere convention at angle pi") {
    const Quaternion qz = rotation_to_quaternion(axis_rotation(2, std::numbers::pi));
    CHECK(qz.a == doctest::Approx(0.0));
    CHECK(qz.d > 0.0); // tie-break lands on +d

    const Quaternion qx = rotation_to_quaternion(axis_rotation(0, std::numbers::pi));
    CHECK(qx.b > 0.0);
  }
}

TEST_CASE("quaternion_to_rotation") {
  SUBCASE("unit and non-unit representatives of the identity") {
    CHECK((quaternion_to_rotation({1, 0, 0, 0}) - Eigen::Matrix3d::Identity()).norm() ==
          0.0);
    CHECK((quaternion_to_rotation({2, 0, 0, 0}) - Eigen::Matrix3d::Identity()).norm() ==
          0.0);
  }

  SUBCASE("quarter turn about z") {
    const Eigen::Matrix3d R =
        quaternion_to_rotation({std::sqrt(0.5), 0, 0, std::sqrt(0.5)});
    Eigen::Matrix3d expect;
    expect << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    CHECK((R - expect).norm() <= 1e-12);
  }

  SUBCASE("norm floor") {
    CHECK_THROWS_AS(quaternion_to_rotation({1e-7, 0, 0, 0}), NumericalError);
  }

  SUBCASE("always a proper rotation above the floor") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 300; ++k) {
      Quaternion q{u(g_rng), u(g_rng), u(g_rng), u(g_rng)};
      if (q.norm() < kQuaternionNormFloor) continue;
      const Eigen::Matrix3d R = quaternion_to_rotation(q);
      CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() <= 1e-12);
      CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("quaternion round trips, including angles near 0 and pi") {
  auto check_roundtrip = [](const Eigen::Matrix3d& R) {
    const Quaternion q = rotation_to_quaternion(R);
    CHECK(std::abs(q.norm() - 1.0) <= 1e-12);
    CHECK(q.a >= 0.0);
    const Eigen::Matrix3d back = quaternion_to_rotation(q);
    CHECK((back - R).norm() <= 1e-12);
  };

  for (int k = 0; k < 1000; ++k) check_roundtrip(random_rotation());

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    Eigen::Vector3d axis(u(g_rng), u(g_rng), u(g_rng));
    if (axis.norm() < 1e-3) continue;
    axis.normalize();
    for (const double eps : {0.0, 1e-9, 1e-6}) {
      check_roundtrip(Eigen::AngleAxisd(eps, axis).toRotationMatrix());
      check_roundtrip(Eigen::AngleAxisd(std::numbers::pi - eps, axis).toRotationMatrix());
    }
  }

  // q and -q encode the same rotation; the map always returns the a >= 0
  // representative.
  for (int k = 0; k < 200; ++k) {
    const Eigen::Matrix3d R = random_rotation();
    const Quaternion q = rotation_to_quaternion(R);
    const Eigen::Matrix3d from_neg = quaternion_to_rotation({-q.a, -q.b, -q.c, -q.d});
    CHECK((from_neg - R).norm() <= 1e-12);
  }
}
