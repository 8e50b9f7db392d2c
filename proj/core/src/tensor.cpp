#include "xfer/tensor.hpp"

#include <stdexcept>

#include <Eigen/SVD>

namespace xfer {

double det3(const Tensor3& F) {
  return F(0, 0) * (F(1, 1) * F(2, 2) - F(1, 2) * F(2, 1)) -
         F(0, 1) * (F(1, 0) * F(2, 2) - F(1, 2) * F(2, 0)) +
         F(0, 2) * (F(1, 0) * F(2, 1) - F(1, 1) * F(2, 0));
}

RawSVD svd3(const Tensor3& F) {
  if (!F.allFinite()) throw std::invalid_argument("svd3: non-finite tensor");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return RawSVD{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

} // namespace xfer
