#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "xfer/point_set.hpp"
#include "xfer/tensor.hpp"

namespace xfer {

/// Point-cloud CSV: header `x,y,z`, one point per line. NaN/inf rejected.
std::vector<Point3> load_points_csv(const std::filesystem::path& path);
void save_points_csv(const std::filesystem::path& path,
                     std::span<const Point3> points);

/// Scalar-field CSV: header `value`, row-aligned with the point cloud.
std::vector<double> load_scalar_csv(const std::filesystem::path& path);
void save_scalar_csv(const std::filesystem::path& path,
                     std::span<const double> values);

/// Displacement CSV: header `dx,dy,dz`.
std::vector<Vec3> load_displacement_csv(const std::filesystem::path& path);
void save_displacement_csv(const std::filesystem::path& path,
                           std::span<const Vec3> values);

/// Tensor-field CSV: header `F11,F12,F13,F21,F22,F23,F31,F32,F33`, row-major.
std::vector<Tensor3> load_tensor_csv(const std::filesystem::path& path);
void save_tensor_csv(const std::filesystem::path& path,
                     std::span<const Tensor3> values);

} // namespace xfer
