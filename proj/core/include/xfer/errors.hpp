#pragma once

#include <stdexcept>
#include <string>

namespace xfer {

/// Raised when a transfer cannot be completed for numerical reasons
/// (non-convergence, uncovered destination, degenerate quaternion,
/// non-positive source determinant). The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace xfer
