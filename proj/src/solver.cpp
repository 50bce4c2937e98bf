#include "admm/solver.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace admm {

namespace {

void check_finite(const Matrix& v, const char* name, int k) {
  if (!v.allFinite()) {
    throw NumericalError(std::string("non-finite values in iterate ") + name +
                         " at iteration " + std::to_string(k));
  }
}

void check_state_dims(const SolverState& state, const Problem& problem) {
  const Dims d = problem.dims();
  const Index cols = state.x.cols();
  if (state.x.rows() != d.n || state.z.rows() != d.m || state.z_prev.rows() != d.m ||
      state.u.rows() != d.p || state.z.cols() != cols || state.z_prev.cols() != cols ||
      state.u.cols() != cols || cols != problem.cols()) {
    throw ConfigError("solver: state dimensions do not match problem");
  }
}

}  // namespace

SolverState iterate(const SolverState& state, const Problem& problem) {
  check_state_dims(state, problem);
  if (!(state.rho > 0.0) || !std::isfinite(state.rho)) {
    throw ConfigError("solver: rho must be positive and finite");
  }
  SolverState next;
  next.rho = state.rho;
  next.k = state.k + 1;
  next.x = problem.solve_x(state.z, state.u, state.rho);
  next.z = problem.solve_z(next.x, state.u, state.rho);
  next.z_prev = state.z;
  next.u = state.u + problem.apply_A(next.x) + problem.apply_B(next.z) - problem.c();
  check_finite(next.x, "x", next.k);
  check_finite(next.z, "z", next.k);
  check_finite(next.u, "u", next.k);
  return next;
}

IterationTrace run(const Problem& problem, SolverState& state,
                   const PenaltyConfig& penalty, const StoppingConfig& stop) {
  penalty.validate();
  stop.validate();
  check_state_dims(state, problem);

  IterationTrace trace;
  for (int step = 0; step < stop.max_iter; ++step) {
    state = iterate(state, problem);
    const ResidualReport rep = residual_report(state, problem, stop);
    const double fval = problem.functional(state.x, state.z);
    if (!std::isfinite(rep.r_norm) || !std::isfinite(rep.s_norm) || !std::isfinite(fval)) {
      throw NumericalError("solver diverged: non-finite residuals at iteration " +
                           std::to_string(state.k));
    }

    IterationRecord rec;
    rec.k = state.k;
    rec.rho = state.rho;
    rec.fval = fval;
    rec.r_norm = rep.r_norm;
    rec.s_norm = rep.s_norm;
    rec.r_rel_norm = rep.r_rel_norm;
    rec.s_rel_norm = rep.s_rel_norm;
    rec.eps_pri = rep.eps_pri;
    rec.eps_dua = rep.eps_dua;
    rec.degenerate_primal_nrm = rep.degenerate_primal_nrm;
    rec.degenerate_dual_nrm = rep.degenerate_dual_nrm;

    if (rep.stop_satisfied) {
      trace.push(rec);
      trace.stop_reason = StopReason::Converged;
      return trace;
    }

    // Stopping was checked first so a rho jump cannot mask a satisfied
    // criterion; the policy only runs on its period.
    if (penalty.variant != PolicyVariant::Fixed && state.k % penalty.period == 0) {
      const auto [rn, sn] = penalty.residual_flavor == ResidualFlavor::Standard
                                ? std::pair{rep.r_norm, rep.s_norm}
                                : std::pair{rep.r_rel_norm, rep.s_rel_norm};
      const RhoUpdate upd = decide_rho(state.rho, rn, sn, penalty);
      rec.tau = upd.tau;
      rec.decision = upd.tag;
      if (upd.rho != state.rho) rescale_dual(state, upd.rho);
    }
    trace.push(rec);
  }
  trace.stop_reason = StopReason::MaxIterations;
  return trace;
}

IterationTrace run(const Problem& problem, double rho0, const PenaltyConfig& penalty,
                   const StoppingConfig& stop) {
  SolverState state = zero_state(problem, rho0);
  return run(problem, state, penalty, stop);
}

}  // namespace admm
