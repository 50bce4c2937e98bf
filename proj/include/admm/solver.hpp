#pragma once

#include "admm/penalty.hpp"
#include "admm/problem.hpp"
#include "admm/residuals.hpp"
#include "admm/state.hpp"
#include "admm/trace.hpp"

namespace admm {

/// One pass of the scaled-form updates: x, then z, then u. rho and the
/// penalty policy are untouched; z_prev receives the incoming z.
/// Throws ConfigError on dimension mismatch and NumericalError when an
/// updated iterate contains non-finite values.
SolverState iterate(const SolverState& state, const Problem& problem);

/// Full solver loop: iterate, report residuals, check stopping, then
/// (every cfg.period iterations, unless already stopped) evaluate the
/// penalty policy and rescale the dual if rho changed. Returns the trace;
/// the final state is written back through `state`.
IterationTrace run(const Problem& problem, SolverState& state,
                   const PenaltyConfig& penalty, const StoppingConfig& stop);

/// Convenience overload starting from all-zero iterates at rho0.
IterationTrace run(const Problem& problem, double rho0, const PenaltyConfig& penalty,
                   const StoppingConfig& stop);

}  // namespace admm
