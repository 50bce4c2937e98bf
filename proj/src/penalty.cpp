#include "admm/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace admm {

std::string to_string(PolicyVariant v) {
  switch (v) {
    case PolicyVariant::Fixed: return "fixed";
    case PolicyVariant::StandardBalance: return "standard";
    case PolicyVariant::XiBalance: return "xi";
    case PolicyVariant::RelativeBalance: return "relative";
  }
  return "?";
}

std::string to_string(ResidualFlavor f) {
  return f == ResidualFlavor::Standard ? "standard" : "relative";
}

std::string to_string(RhoDecision d) {
  switch (d) {
    case RhoDecision::None: return "none";
    case RhoDecision::Increase: return "increase";
    case RhoDecision::Decrease: return "decrease";
    case RhoDecision::Hold: return "hold";
    case RhoDecision::Clamped: return "clamped";
  }
  return "?";
}

double PenaltyConfig::effective_xi() const {
  return variant == PolicyVariant::StandardBalance ? 1.0 : xi;
}

void PenaltyConfig::validate() const {
  if (variant == PolicyVariant::Fixed) return;
  if (!(mu > 1.0)) throw ConfigError("penalty: mu must be > 1");
  if (tau_mode == TauMode::Fixed && !(tau > 1.0)) {
    throw ConfigError("penalty: tau must be > 1");
  }
  if (!(tau_max > 1.0)) throw ConfigError("penalty: tau_max must be > 1");
  if (tau_mode == TauMode::Fixed && tau_max < tau) {
    throw ConfigError("penalty: tau_max must be >= tau");
  }
  if (!(xi > 0.0) || !std::isfinite(xi)) throw ConfigError("penalty: xi must be positive");
  if (period < 1) throw ConfigError("penalty: period must be >= 1");
  if (!(rho_min > 0.0) || !(rho_max > 0.0) || rho_min > rho_max) {
    throw ConfigError("penalty: need 0 < rho_min <= rho_max");
  }
}

PenaltyConfig fixed_penalty() {
  PenaltyConfig cfg;
  cfg.variant = PolicyVariant::Fixed;
  return cfg;
}

PenaltyConfig standard_balance(double mu, double tau, int period) {
  PenaltyConfig cfg;
  cfg.variant = PolicyVariant::StandardBalance;
  cfg.residual_flavor = ResidualFlavor::Standard;
  cfg.mu = mu;
  cfg.tau = tau;
  cfg.period = period;
  return cfg;
}

PenaltyConfig xi_balance(double xi, double mu, double tau, int period) {
  PenaltyConfig cfg = standard_balance(mu, tau, period);
  cfg.variant = PolicyVariant::XiBalance;
  cfg.xi = xi;
  return cfg;
}

PenaltyConfig relative_balance(double xi, double mu, double tau, int period) {
  PenaltyConfig cfg;
  cfg.variant = PolicyVariant::RelativeBalance;
  cfg.residual_flavor = ResidualFlavor::Relative;
  cfg.mu = mu;
  cfg.tau = tau;
  cfg.xi = xi;
  cfg.period = period;
  return cfg;
}

double decide_tau(double r_norm, double s_norm, const PenaltyConfig& cfg) {
  if (r_norm == 0.0 && s_norm == 0.0) return 1.0;  // converged, no-op
  const double xi = cfg.effective_xi();
  double q;
  if (s_norm == 0.0) {
    q = std::numeric_limits<double>::infinity();
  } else {
    q = std::sqrt(r_norm / (xi * s_norm));
  }
  if (q >= 1.0 && q < cfg.tau_max) return q;
  if (q > 1.0 / cfg.tau_max && q < 1.0) return std::sqrt(xi * s_norm / r_norm);
  return cfg.tau_max;
}

RhoUpdate decide_rho(double rho, double r_norm, double s_norm, const PenaltyConfig& cfg) {
  if (!std::isfinite(r_norm) || !std::isfinite(s_norm) || r_norm < 0.0 || s_norm < 0.0) {
    throw NumericalError("decide_rho: residual norms must be finite and non-negative");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw ConfigError("decide_rho: rho must be positive and finite");
  }
  if (r_norm == 0.0 && s_norm == 0.0) return {rho, RhoDecision::Hold, 1.0};

  const double xi = cfg.effective_xi();
  const double tau =
      cfg.tau_mode == TauMode::Adaptive ? decide_tau(r_norm, s_norm, cfg) : cfg.tau;

  double raw = rho;
  RhoDecision tag = RhoDecision::Hold;
  if (r_norm > xi * cfg.mu * s_norm) {
    raw = tau * rho;
    tag = RhoDecision::Increase;
  } else if (s_norm > (cfg.mu / xi) * r_norm) {
    raw = rho / tau;
    tag = RhoDecision::Decrease;
  }
  const double clamped = std::clamp(raw, cfg.rho_min, cfg.rho_max);
  if (tag != RhoDecision::Hold && clamped != raw) tag = RhoDecision::Clamped;
  return {clamped, tag, tau};
}

double xi_for_scaling(double alpha, double beta, double gamma) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw ConfigError("xi_for_scaling: scale factors must be positive and finite");
  }
  return alpha * gamma / beta;
}

double xi_heuristic(double lambda, double a) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("xi_heuristic: lambda must be positive");
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ConfigError("xi_heuristic: fit constant must be positive");
  }
  return 1.0 + std::pow(a, std::log10(lambda) + 1.0);
}

}  // namespace admm
