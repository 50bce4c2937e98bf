#pragma once

#include <vector>

#include "admm/penalty.hpp"

namespace admm {

enum class StopReason { Converged, MaxIterations };

/// One row of a solver trace. `decision` is None on iterations where the
/// penalty policy was not evaluated; `tau` is the multiplier the policy
/// computed (1 when no policy ran).
struct IterationRecord {
  int k = 0;
  double rho = 0.0;
  double fval = 0.0;
  double r_norm = 0.0;
  double s_norm = 0.0;
  double r_rel_norm = 0.0;
  double s_rel_norm = 0.0;
  double eps_pri = 0.0;
  double eps_dua = 0.0;
  double tau = 1.0;
  RhoDecision decision = RhoDecision::None;
  bool degenerate_primal_nrm = false;
  bool degenerate_dual_nrm = false;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  StopReason stop_reason = StopReason::MaxIterations;

  /// Appends a record; k must advance by exactly one per record.
  void push(const IterationRecord& rec);

  int iterations() const { return records.empty() ? 0 : records.back().k; }
  bool converged() const { return stop_reason == StopReason::Converged; }
  const IterationRecord& last() const { return records.back(); }
};

}  // namespace admm
