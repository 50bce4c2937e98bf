#pragma once

#include <string>

#include "admm/types.hpp"

namespace admm {

enum class PolicyVariant { Fixed, StandardBalance, XiBalance, RelativeBalance };
enum class ResidualFlavor { Standard, Relative };
enum class TauMode { Fixed, Adaptive };

/// Outcome of one penalty-policy evaluation.
enum class RhoDecision { None, Increase, Decrease, Hold, Clamped };

std::string to_string(PolicyVariant v);
std::string to_string(ResidualFlavor f);
std::string to_string(RhoDecision d);

/// Residual-balancing policy configuration. The balance test multiplies
/// rho by tau when the primal residual norm exceeds xi * mu times the dual
/// residual norm, divides when the dual norm exceeds mu / xi times the
/// primal norm, and holds otherwise. StandardBalance pins xi = 1; the
/// other balancing variants read `xi`.
struct PenaltyConfig {
  PolicyVariant variant = PolicyVariant::RelativeBalance;
  ResidualFlavor residual_flavor = ResidualFlavor::Relative;
  double mu = 10.0;
  double tau = 2.0;
  TauMode tau_mode = TauMode::Fixed;
  double tau_max = 100.0;
  double xi = 1.0;
  int period = 10;  ///< apply the policy every `period` iterations
  double rho_min = 1e-8;
  double rho_max = 1e8;

  /// xi actually applied: 1 for StandardBalance, `xi` otherwise.
  double effective_xi() const;

  /// Throws ConfigError on out-of-range parameters.
  void validate() const;
};

PenaltyConfig fixed_penalty();
PenaltyConfig standard_balance(double mu = 10.0, double tau = 2.0, int period = 10);
PenaltyConfig xi_balance(double xi, double mu = 10.0, double tau = 2.0, int period = 10);
PenaltyConfig relative_balance(double xi = 1.0, double mu = 10.0, double tau = 2.0,
                               int period = 10);

struct RhoUpdate {
  double rho;
  RhoDecision tag;
  double tau;  ///< multiplier that was applied (or would be)
};

/// One evaluation of the balancing rule. r_norm and s_norm must be taken
/// in cfg.residual_flavor. The result is clamped to [rho_min, rho_max];
/// a binding clamp is reported as RhoDecision::Clamped.
RhoUpdate decide_rho(double rho, double r_norm, double s_norm, const PenaltyConfig& cfg);

/// Adaptive multiplier: sqrt(r / (xi s)) when that lies in [1, tau_max),
/// its reciprocal when in (1/tau_max, 1), tau_max otherwise. Always >= 1.
/// Both norms zero yields 1 (no-op).
double decide_tau(double r_norm, double s_norm, const PenaltyConfig& cfg);

/// Ratio compensation for a problem scaled by (alpha, beta, gamma):
/// xi = alpha * gamma / beta.
double xi_for_scaling(double alpha, double beta, double gamma);

/// Heuristic target ratio as a function of the sparsity weight:
/// 1 + a^(log10(lambda) + 1).
double xi_heuristic(double lambda, double a = 18.3);

}  // namespace admm
