#pragma once

#include <algorithm>
#include <cmath>

#include "admm/types.hpp"

namespace admm {

/// Elementwise soft threshold: sign(v) * max(|v| - level, 0).
inline Matrix soft_threshold(const Matrix& v, double level) {
  return v.unaryExpr([level](double t) {
    return std::copysign(std::max(std::abs(t) - level, 0.0), t);
  });
}

}  // namespace admm
