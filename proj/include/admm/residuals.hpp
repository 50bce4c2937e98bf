#pragma once

#include <utility>

#include "admm/problem.hpp"
#include "admm/state.hpp"

namespace admm {

enum class StopMode { Standard, Relative };

struct StoppingConfig {
  double eps_abs = 0.0;
  double eps_rel = 1e-4;
  int max_iter = 1000;
  StopMode mode = StopMode::Relative;

  /// Throws ConfigError unless eps_abs, eps_rel >= 0, at least one of
  /// them positive, and max_iter >= 1.
  void validate() const;
};

/// Residuals of one iterate together with their norms, normalization
/// factors, relative norms, and the stopping thresholds in force.
///
/// When a normalization factor falls below the degeneracy floor the
/// corresponding degenerate_* flag is set and the absolute norm is
/// substituted for the relative one instead of dividing.
struct ResidualReport {
  Matrix r;  ///< primal residual, p x cols
  Matrix s;  ///< dual residual, n x cols
  double r_norm = 0.0;
  double s_norm = 0.0;
  double r_nrm_factor = 0.0;  ///< max{ ||A x||, ||B z||, ||c|| }
  double s_nrm_factor = 0.0;  ///< ||A' y||
  double r_rel_norm = 0.0;
  double s_rel_norm = 0.0;
  double eps_pri = 0.0;
  double eps_dua = 0.0;
  bool degenerate_primal_nrm = false;
  bool degenerate_dual_nrm = false;
  bool stop_satisfied = false;
};

/// A x + B z - c.
Matrix primal_residual(const Matrix& x, const Matrix& z, const Problem& problem);

/// rho A' B (z_new - z_prev).
Matrix dual_residual(const Matrix& z_new, const Matrix& z_prev, double rho,
                     const Problem& problem);

/// Normalization factors below this value count as degenerate:
/// 1e-12 * max(||c||, 1).
double degeneracy_floor(const Problem& problem);

/// Relative residual norms of a full iterate. The dual one is computed in
/// u-form, ||A' B (z - z_prev)|| / ||A' u||, where rho cancels.
struct RelativeNorms {
  double r_rel_norm;
  double s_rel_norm;
  bool degenerate_primal_nrm;
  bool degenerate_dual_nrm;
};
RelativeNorms relative_residuals(const SolverState& state, const Problem& problem);

/// (eps_pri, eps_dua) for the configured mode at the current iterate.
std::pair<double, double> stopping_thresholds(const SolverState& state,
                                              const Problem& problem,
                                              const StoppingConfig& cfg);

/// Full report for the current iterate, including the stopping decision
/// in cfg.mode (standard mode compares absolute norms, relative mode the
/// relative ones).
ResidualReport residual_report(const SolverState& state, const Problem& problem,
                               const StoppingConfig& cfg);

}  // namespace admm
