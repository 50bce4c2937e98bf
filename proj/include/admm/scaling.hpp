#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "admm/penalty.hpp"
#include "admm/problem.hpp"
#include "admm/residuals.hpp"
#include "admm/state.hpp"

namespace admm {

/// The scaling family under which solutions are invariant: alpha scales
/// the objective, beta the constraint, gamma the variables.
struct ScalingTriple {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;

  void validate() const;  ///< all strictly positive and finite
};

/// Scaling family of the special case A x = z (B = -I, c = 0), where the
/// two variable blocks scale independently: gamma for x, delta for z.
struct GraphFormScaling {
  double alpha = 1.0;
  double gamma = 1.0;
  double delta = 1.0;

  void validate() const;
};

/// Companion of `base` scaled by (alpha, beta, gamma):
///   f~(x) = alpha f(gamma x),  g~(z) = alpha g(gamma z),
///   A~ = beta gamma A,  B~ = beta gamma B,  c~ = beta c.
/// Partial minimizers are exact transforms of the base problem's.
std::shared_ptr<Problem> scale_problem(std::shared_ptr<const Problem> base,
                                       const ScalingTriple& t);

/// Graph-form companion: f~(x) = alpha f(gamma x), g~(z) = alpha g(delta z),
/// A~ = gamma/delta A. The base problem must be in graph form (B = -I,
/// c = 0), which is probed at construction.
std::shared_ptr<Problem> scale_graph_problem(std::shared_ptr<const Problem> base,
                                             const GraphFormScaling& t);

/// Penalty that keeps scaled iterates matched: alpha rho / beta^2.
double scaled_rho(double rho, const ScalingTriple& t);
/// Graph-form counterpart: alpha delta^2 rho.
double scaled_rho(double rho, const GraphFormScaling& t);

/// Iterates matched to the scaled problem: x~ = x/gamma, z~ = z/gamma,
/// y~ = (alpha/beta) y, with u~ recovered through the scaled rho.
SolverState scale_iterates(const SolverState& state, const ScalingTriple& t);
/// Graph form: x~ = x/gamma, z~ = z/delta, y~ = alpha delta y.
SolverState scale_iterates(const SolverState& state, const GraphFormScaling& t);

struct EquivarianceRow {
  std::string relation;
  int k;
  double deviation;
};

struct RelationSummary {
  std::string relation;
  double max_deviation = 0.0;
  int worst_k = 0;
};

/// Outcome of a lockstep run of a problem and its scaled companion.
/// Deviations are relative to the expected quantity's scale (its norm, or
/// the matching normalization factor for the residual relations) plus a
/// tiny floor. Decision/tau sequences are recorded at every policy
/// evaluation point when a policy is supplied.
struct EquivarianceReport {
  int k_max = 0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<EquivarianceRow> rows;          // every (relation, k)
  std::vector<RelationSummary> summary;       // worst deviation per relation
  std::optional<EquivarianceRow> first_violation;

  std::vector<RhoDecision> base_decisions, scaled_decisions;
  std::vector<double> base_taus, scaled_taus;
  int first_decision_mismatch = -1;  // index into the decision sequences
  bool decisions_match() const { return first_decision_mismatch < 0; }

  int first_stop_mismatch = -1;  // iteration where stopping decisions differ
  bool stopping_match() const { return first_stop_mismatch < 0; }
};

/// Runs `problem` and its (alpha, beta, gamma) companion in lockstep for
/// k_max iterations from zero iterates, with rho0 and scaled_rho(rho0)
/// respectively, and measures the per-iteration relations
///   x~ = x/gamma, z~ = z/gamma, y~ = (alpha/beta) y, r~ = beta r,
///   s~ = alpha gamma s, and equality of the relative residual norms
/// (plus the scalings of both normalization factors). Stopping decisions
/// under `stop` are compared at every k but never terminate the runs.
///
/// With no policy both runs keep rho fixed. With a policy, the base run
/// uses `policy` and the scaled run `policy_scaled` (defaulting to
/// `policy`), and the decision sequences are recorded and compared.
EquivarianceReport verify_equivariance(
    const Problem& problem, const ScalingTriple& t, int k_max, double rho0,
    std::optional<PenaltyConfig> policy = std::nullopt,
    std::optional<PenaltyConfig> policy_scaled = std::nullopt, double tolerance = 1e-9,
    const StoppingConfig& stop = {0.0, 1e-4, 1, StopMode::Relative});

/// CSV rows "relation,k,deviation".
void write_equivariance_csv(const EquivarianceReport& report, std::ostream& out);

}  // namespace admm
