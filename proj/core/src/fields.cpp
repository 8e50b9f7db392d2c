#include "xfer/fields.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "xfer/errors.hpp"

namespace xfer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TrigMode {
  Vec3 wave;                 // 2*pi*k, integer k
  Vec3 amplitude;            // per displacement component
  Vec3 phase;
};

Vec3 to_vec(const Point3& p) { return Vec3(p.x, p.y, p.z); }

} // namespace

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::Twist: return "twist";
    case FieldKind::Stretch: return "stretch";
    case FieldKind::Shear: return "shear";
    case FieldKind::RotBlend: return "rotblend";
    case FieldKind::RandSmooth: return "randsmooth";
  }
  return "?";
}

std::optional<FieldKind> field_kind_from_string(std::string_view name) {
  if (name == "twist") return FieldKind::Twist;
  if (name == "stretch") return FieldKind::Stretch;
  if (name == "shear") return FieldKind::Shear;
  if (name == "rotblend") return FieldKind::RotBlend;
  if (name == "randsmooth") return FieldKind::RandSmooth;
  return std::nullopt;
}

Tensor3 axis_rotation(int axis, double angle) {
  if (axis < 0 || axis > 2)
    throw std::invalid_argument("axis_rotation: axis must be 0, 1 or 2");
  const double c = std::cos(angle), s = std::sin(angle);
  Tensor3 R = Tensor3::Identity();
  const int u = (axis + 1) % 3, v = (axis + 2) % 3;
  R(u, u) = c;
  R(u, v) = -s;
  R(v, u) = s;
  R(v, v) = c;
  return R;
}

GeneratedField generate_field(FieldKind kind, const FieldParams& params,
                              const PointSet& ps, std::uint64_t seed) {
  if (params.axis < 0 || params.axis > 2)
    throw std::invalid_argument("generate_field: axis must be 0, 1 or 2");

  TensorTruth truth;
  DisplacementTruth dtruth;

  switch (kind) {
    case FieldKind::Twist: {
      const int axis = params.axis;
      const double rate = params.rate;
      const double c0 = params.center(axis);
      truth = [axis, rate, c0](const Point3& p) {
        const double along = axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
        return axis_rotation(axis, rate * (along - c0));
      };
      break;
    }

    case FieldKind::Stretch: {
      const double a = params.amplitude;
      if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument("generate_field: stretch amplitude must be in [0, 1)");
      constexpr double phase[3] = {0.0, std::numbers::pi / 3.0,
                                   2.0 * std::numbers::pi / 3.0};
      truth = [a, phase](const Point3& p) {
        const double c[3] = {p.x, p.y, p.z};
        Tensor3 F = Tensor3::Zero();
        for (int i = 0; i < 3; ++i)
          F(i, i) = 1.0 + a * std::cos(kTwoPi * c[i] + phase[i]);
        return F;
      };
      dtruth = [a, phase](const Point3& p) {
        const double c[3] = {p.x, p.y, p.z};
        Vec3 d;
        for (int i = 0; i < 3; ++i)
          d(i) = (a / kTwoPi) *
                 (std::sin(kTwoPi * c[i] + phase[i]) - std::sin(phase[i]));
        return d;
      };
      break;
    }

    case FieldKind::Shear: {
      const double a = params.amplitude;
      truth = [a](const Point3& p) {
        Tensor3 F = Tensor3::Identity();
        F(0, 1) = a * std::cos(std::numbers::pi * p.y);
        return F;
      };
      dtruth = [a](const Point3& p) {
        return Vec3((a / std::numbers::pi) * std::sin(std::numbers::pi * p.y), 0.0, 0.0);
      };
      break;
    }

    case FieldKind::RotBlend: {
      const int axis = params.axis;
      const double split = params.center(0);
      const Tensor3 flipped = axis_rotation(axis, std::numbers::pi);
      truth = [axis, split, flipped](const Point3& p) {
        return p.x >= split ? flipped : Tensor3::Identity();
      };
      break;
    }

    case FieldKind::RandSmooth: {
      const double a = params.amplitude;
      if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument(
            "generate_field: randsmooth amplitude (gradient budget) must be in [0, 1)");
      if (params.modes < 1)
        throw std::invalid_argument("generate_field: modes must be >= 1");

      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> wave(-2, 2);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);

      std::vector<TrigMode> modes(static_cast<std::size_t>(params.modes));
      for (auto& m : modes) {
        Vec3 k;
        do {
          k = Vec3(wave(rng), wave(rng), wave(rng));
        } while (k.squaredNorm() == 0.0);
        m.wave = kTwoPi * k;
        for (int c = 0; c < 3; ++c) m.amplitude(c) = unit(rng);
        for (int c = 0; c < 3; ++c) m.phase(c) = angle(rng);
      }
      // Normalize so each component's gradient is below a/sqrt(3) in norm,
      // keeping ||grad d||_F <= a < 1 and hence det(I + grad d) > 0.
      for (int c = 0; c < 3; ++c) {
        double budget = 0.0;
        for (const auto& m : modes) budget += std::abs(m.amplitude(c)) * m.wave.norm();
        const double scale = budget > 0.0 ? (a / std::sqrt(3.0)) / budget : 0.0;
        for (auto& m : modes) m.amplitude(c) *= scale;
      }

      truth = [modes](const Point3& p) {
        const Vec3 x = to_vec(p);
        Tensor3 F = Tensor3::Identity();
        for (const auto& m : modes)
          for (int c = 0; c < 3; ++c)
            F.row(c) += m.amplitude(c) * std::cos(m.wave.dot(x) + m.phase(c)) *
                        m.wave.transpose();
        return F;
      };
      dtruth = [modes](const Point3& p) {
        const Vec3 x = to_vec(p);
        Vec3 d = Vec3::Zero();
        for (const auto& m : modes)
          for (int c = 0; c < 3; ++c)
            d(c) += m.amplitude(c) * std::sin(m.wave.dot(x) + m.phase(c));
        return d;
      };
      break;
    }
  }

  std::vector<Tensor3> samples(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    samples[i] = truth(ps[i]);
    const double d = det3(samples[i]);
    if (!(d > 0.0))
      throw NumericalError("generate_field: det = " + std::to_string(d) +
                           " <= 0 at source point " + std::to_string(i));
  }

  GeneratedField out{std::nullopt,
                     TensorField{ps, std::move(samples)},
                     kind == FieldKind::RotBlend ? TensorTruth{} : truth,
                     DisplacementTruth{}};
  if (dtruth) {
    std::vector<Vec3> disp(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) disp[i] = dtruth(ps[i]);
    out.displacement = std::move(disp);
    out.displacement_truth = dtruth;
  }
  return out;
}

} // namespace xfer
