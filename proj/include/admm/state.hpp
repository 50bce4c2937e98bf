#pragma once

#include "admm/problem.hpp"

namespace admm {

/// Solver iterates after step k. u is the scaled dual variable; the
/// unscaled dual is y = rho * u, which is what residual formulas and
/// reports are stated in.
struct SolverState {
  Matrix x;       ///< n x cols
  Matrix z;       ///< m x cols
  Matrix z_prev;  ///< z at the previous step
  Matrix u;       ///< p x cols, scaled dual
  double rho = 1.0;
  int k = 0;

  Matrix y() const { return rho * u; }
};

/// All-zero iterates shaped for `problem`, with penalty rho0.
SolverState zero_state(const Problem& problem, double rho0);

/// Change rho in place while keeping the unscaled dual y = rho * u fixed:
/// u is multiplied by rho_old / rho_new.
void rescale_dual(SolverState& state, double rho_new);

}  // namespace admm
