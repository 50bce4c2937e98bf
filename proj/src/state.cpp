#include "admm/state.hpp"

#include <cmath>

namespace admm {

SolverState zero_state(const Problem& problem, double rho0) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
    throw ConfigError("initial rho must be positive and finite");
  }
  const Dims d = problem.dims();
  const Index k = problem.cols();
  SolverState s;
  s.x = Matrix::Zero(d.n, k);
  s.z = Matrix::Zero(d.m, k);
  s.z_prev = Matrix::Zero(d.m, k);
  s.u = Matrix::Zero(d.p, k);
  s.rho = rho0;
  s.k = 0;
  return s;
}

void rescale_dual(SolverState& state, double rho_new) {
  if (!(rho_new > 0.0) || !std::isfinite(rho_new)) {
    throw ConfigError("rescale_dual: rho must be positive and finite");
  }
  if (rho_new == state.rho) return;
  state.u *= state.rho / rho_new;
  state.rho = rho_new;
}

}  // namespace admm
