#include "admm/residuals.hpp"

#include <algorithm>
#include <cmath>

namespace admm {

namespace {

constexpr double kFloorScale = 1e-12;

void check_iterate_dims(const Matrix& x, const Matrix& z, const Problem& problem) {
  const Dims d = problem.dims();
  if (x.rows() != d.n || z.rows() != d.m || x.cols() != z.cols()) {
    throw ConfigError("residuals: iterate dimensions do not match problem");
  }
}

struct Thresholds {
  double eps_pri;
  double eps_dua;
};

Thresholds thresholds(double r_factor, double s_factor, bool degen_primal,
                      bool degen_dual, const Dims& d, Index cols,
                      const StoppingConfig& cfg) {
  const double sqrt_p = std::sqrt(static_cast<double>(d.p * cols));
  const double sqrt_n = std::sqrt(static_cast<double>(d.n * cols));
  if (cfg.mode == StopMode::Standard) {
    return {sqrt_p * cfg.eps_abs + cfg.eps_rel * r_factor,
            sqrt_n * cfg.eps_abs + cfg.eps_rel * s_factor};
  }
  // Relative mode. A degenerate factor makes the absolute term unusable;
  // the relative norm is then an absolute norm, so the threshold keeps the
  // absolute term undivided.
  const double pri = degen_primal ? sqrt_p * cfg.eps_abs + cfg.eps_rel
                                  : sqrt_p * cfg.eps_abs / r_factor + cfg.eps_rel;
  const double dua = degen_dual ? sqrt_n * cfg.eps_abs + cfg.eps_rel
                                : sqrt_n * cfg.eps_abs / s_factor + cfg.eps_rel;
  return {pri, dua};
}

}  // namespace

void StoppingConfig::validate() const {
  if (eps_abs < 0.0 || eps_rel < 0.0 || !std::isfinite(eps_abs) || !std::isfinite(eps_rel)) {
    throw ConfigError("stopping: tolerances must be finite and non-negative");
  }
  if (eps_abs == 0.0 && eps_rel == 0.0) {
    throw ConfigError("stopping: at least one tolerance must be positive");
  }
  if (max_iter < 1) throw ConfigError("stopping: max_iter must be >= 1");
}

Matrix primal_residual(const Matrix& x, const Matrix& z, const Problem& problem) {
  check_iterate_dims(x, z, problem);
  return problem.apply_A(x) + problem.apply_B(z) - problem.c();
}

Matrix dual_residual(const Matrix& z_new, const Matrix& z_prev, double rho,
                     const Problem& problem) {
  if (!(rho > 0.0)) throw ConfigError("dual_residual: rho must be positive");
  if (z_new.rows() != problem.dims().m || z_new.rows() != z_prev.rows() ||
      z_new.cols() != z_prev.cols()) {
    throw ConfigError("dual_residual: dimension mismatch");
  }
  return rho * problem.apply_At(problem.apply_B(z_new - z_prev));
}

double degeneracy_floor(const Problem& problem) {
  return kFloorScale * std::max(problem.c().norm(), 1.0);
}

ResidualReport residual_report(const SolverState& state, const Problem& problem,
                               const StoppingConfig& cfg) {
  check_iterate_dims(state.x, state.z, problem);

  ResidualReport rep;
  const Matrix ax = problem.apply_A(state.x);
  const Matrix bz = problem.apply_B(state.z);
  rep.r = ax + bz - problem.c();
  // u-form of the dual quantities: rho enters each only once.
  const Matrix s_over_rho = problem.apply_At(problem.apply_B(state.z - state.z_prev));
  rep.s = state.rho * s_over_rho;
  rep.r_norm = rep.r.norm();
  rep.s_norm = rep.s.norm();

  rep.r_nrm_factor = std::max({ax.norm(), bz.norm(), problem.c().norm()});
  const double atu_norm = problem.apply_At(state.u).norm();
  rep.s_nrm_factor = state.rho * atu_norm;

  const double floor = degeneracy_floor(problem);
  rep.degenerate_primal_nrm = rep.r_nrm_factor < floor;
  rep.degenerate_dual_nrm = rep.s_nrm_factor < floor;
  rep.r_rel_norm = rep.degenerate_primal_nrm ? rep.r_norm : rep.r_norm / rep.r_nrm_factor;
  rep.s_rel_norm = rep.degenerate_dual_nrm ? rep.s_norm : s_over_rho.norm() / atu_norm;

  const Thresholds t =
      thresholds(rep.r_nrm_factor, rep.s_nrm_factor, rep.degenerate_primal_nrm,
                 rep.degenerate_dual_nrm, problem.dims(), state.x.cols(), cfg);
  rep.eps_pri = t.eps_pri;
  rep.eps_dua = t.eps_dua;
  if (cfg.mode == StopMode::Standard) {
    rep.stop_satisfied = rep.r_norm <= rep.eps_pri && rep.s_norm <= rep.eps_dua;
  } else {
    rep.stop_satisfied = rep.r_rel_norm <= rep.eps_pri && rep.s_rel_norm <= rep.eps_dua;
  }
  return rep;
}

RelativeNorms relative_residuals(const SolverState& state, const Problem& problem) {
  StoppingConfig cfg;  // thresholds irrelevant here
  const ResidualReport rep = residual_report(state, problem, cfg);
  return {rep.r_rel_norm, rep.s_rel_norm, rep.degenerate_primal_nrm,
          rep.degenerate_dual_nrm};
}

std::pair<double, double> stopping_thresholds(const SolverState& state,
                                              const Problem& problem,
                                              const StoppingConfig& cfg) {
  cfg.validate();
  const double r_factor = std::max({problem.apply_A(state.x).norm(),
                                    problem.apply_B(state.z).norm(),
                                    problem.c().norm()});
  const double s_factor = state.rho * problem.apply_At(state.u).norm();
  const double floor = degeneracy_floor(problem);
  const Thresholds t = thresholds(r_factor, s_factor, r_factor < floor,
                                  s_factor < floor, problem.dims(), state.x.cols(), cfg);
  return {t.eps_pri, t.eps_dua};
}

}  // namespace admm
