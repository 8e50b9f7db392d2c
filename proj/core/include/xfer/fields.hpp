#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "xfer/point_set.hpp"
#include "xfer/tensor.hpp"
#include "xfer/transfer.hpp"

namespace xfer {

enum class FieldKind {
  Twist,      // pure rotation about an axis, angle varying along it
  Stretch,    // smooth near-incompressible diagonal stretch
  Shear,      // unit-determinant simple shear
  RotBlend,   // adversarial step between identity and a pi rotation
  RandSmooth, // seeded smooth random det-positive field
};

std::string to_string(FieldKind k);
std::optional<FieldKind> field_kind_from_string(std::string_view name);

struct FieldParams {
  double amplitude = 0.2; // stretch/shear magnitude; randsmooth gradient budget (< 1)
  double rate = 1.0;      // twist: radians per unit length along the axis
  int axis = 2;           // twist/rotblend rotation axis (0, 1, 2)
  Vec3 center{0.5, 0.5, 0.5};
  int modes = 3;          // randsmooth trigonometric modes
};

using TensorTruth = std::function<Tensor3(const Point3&)>;
using DisplacementTruth = std::function<Vec3(const Point3&)>;

struct GeneratedField {
  /// Present for kinds that are displacement gradients (stretch, shear,
  /// randsmooth); absent for genuine rotation fields (twist, rotblend).
  std::optional<std::vector<Vec3>> displacement;
  TensorField tensor;
  /// Analytic truth handles; tensor truth is null for rotblend (values at
  /// the step are intentionally ill-defined).
  TensorTruth truth;
  DisplacementTruth displacement_truth;
};

/// Deterministic under (kind, params, seed); the seed only matters for
/// randsmooth. Every source sample is checked det > 0; a violating
/// parameter set reports the offending point.
GeneratedField generate_field(FieldKind kind, const FieldParams& params,
                              const PointSet& ps, std::uint64_t seed);

/// Rotation by `angle` about coordinate axis 0, 1 or 2.
Tensor3 axis_rotation(int axis, double angle);

} // namespace xfer
