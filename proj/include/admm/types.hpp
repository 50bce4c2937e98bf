#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace admm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sizes of the three spaces in the constraint A x + B z = c.
struct Dims {
  Index n;  ///< rows of x
  Index m;  ///< rows of z
  Index p;  ///< rows of c
  bool operator==(const Dims&) const = default;
};

/// Invalid configuration, parameter, or dimension mismatch.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values or a failed factorization inside a solve.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace admm
