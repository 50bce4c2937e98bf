#include "admm/scaling.hpp"

#include <cmath>
#include <iterator>
#include <ostream>
#include <string>
#include <utility>

#include "admm/solver.hpp"

namespace admm {

namespace {

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("scaling: ") + name + " must be positive and finite");
  }
}

/// General-family companion. With rho~ = alpha rho / beta^2 the inner
/// solves run at the base problem's rho, so cached factorizations behave
/// identically in both runs.
class ScaledProblem final : public Problem {
 public:
  ScaledProblem(std::shared_ptr<const Problem> base, ScalingTriple t)
      : base_(std::move(base)), t_(t) {
    t_.validate();
    c_ = t_.beta * base_->c();
  }

  Matrix solve_x(const Matrix& z, const Matrix& u, double rho) const override {
    return base_->solve_x(t_.gamma * z, u / t_.beta, inner_rho(rho)) / t_.gamma;
  }
  Matrix solve_z(const Matrix& x, const Matrix& u, double rho) const override {
    return base_->solve_z(t_.gamma * x, u / t_.beta, inner_rho(rho)) / t_.gamma;
  }
  Matrix apply_A(const Matrix& x) const override {
    return t_.beta * t_.gamma * base_->apply_A(x);
  }
  Matrix apply_At(const Matrix& w) const override {
    return t_.beta * t_.gamma * base_->apply_At(w);
  }
  Matrix apply_B(const Matrix& z) const override {
    return t_.beta * t_.gamma * base_->apply_B(z);
  }
  const Matrix& c() const override { return c_; }
  double f(const Matrix& x) const override { return t_.alpha * base_->f(t_.gamma * x); }
  double g(const Matrix& z) const override { return t_.alpha * base_->g(t_.gamma * z); }
  Dims dims() const override { return base_->dims(); }
  Index cols() const override { return base_->cols(); }

 private:
  double inner_rho(double rho) const { return rho * t_.beta * t_.beta / t_.alpha; }

  std::shared_ptr<const Problem> base_;
  ScalingTriple t_;
  Matrix c_;
};

/// Graph-form companion (base must satisfy B = -I, c = 0).
class GraphScaledProblem final : public Problem {
 public:
  GraphScaledProblem(std::shared_ptr<const Problem> base, GraphFormScaling t)
      : base_(std::move(base)), t_(t) {
    t_.validate();
    const Dims d = base_->dims();
    if (d.m != d.p || base_->c().norm() != 0.0) {
      throw ConfigError("graph scaling: base problem is not in graph form");
    }
    Matrix probe = Matrix::Ones(d.m, base_->cols());
    if ((base_->apply_B(probe) + probe).norm() != 0.0) {
      throw ConfigError("graph scaling: base problem must have B = -I");
    }
    c_ = Matrix::Zero(d.p, base_->cols());
  }

  Matrix solve_x(const Matrix& z, const Matrix& u, double rho) const override {
    return base_->solve_x(t_.delta * z, t_.delta * u, inner_rho(rho)) / t_.gamma;
  }
  Matrix solve_z(const Matrix& x, const Matrix& u, double rho) const override {
    return base_->solve_z(t_.gamma * x, t_.delta * u, inner_rho(rho)) / t_.delta;
  }
  Matrix apply_A(const Matrix& x) const override {
    return (t_.gamma / t_.delta) * base_->apply_A(x);
  }
  Matrix apply_At(const Matrix& w) const override {
    return (t_.gamma / t_.delta) * base_->apply_At(w);
  }
  Matrix apply_B(const Matrix& z) const override { return -z; }
  const Matrix& c() const override { return c_; }
  double f(const Matrix& x) const override { return t_.alpha * base_->f(t_.gamma * x); }
  double g(const Matrix& z) const override { return t_.alpha * base_->g(t_.delta * z); }
  Dims dims() const override { return base_->dims(); }
  Index cols() const override { return base_->cols(); }

 private:
  double inner_rho(double rho) const { return rho / (t_.alpha * t_.delta * t_.delta); }

  std::shared_ptr<const Problem> base_;
  GraphFormScaling t_;
  Matrix c_;
};

double relation_deviation(const Matrix& got, const Matrix& expected, double scale) {
  return (got - expected).norm() / (scale + 1e-30);
}

}  // namespace

void ScalingTriple::validate() const {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  check_positive(gamma, "gamma");
}

void GraphFormScaling::validate() const {
  check_positive(alpha, "alpha");
  check_positive(gamma, "gamma");
  check_positive(delta, "delta");
}

std::shared_ptr<Problem> scale_problem(std::shared_ptr<const Problem> base,
                                       const ScalingTriple& t) {
  return std::make_shared<ScaledProblem>(std::move(base), t);
}

std::shared_ptr<Problem> scale_graph_problem(std::shared_ptr<const Problem> base,
                                             const GraphFormScaling& t) {
  return std::make_shared<GraphScaledProblem>(std::move(base), t);
}

double scaled_rho(double rho, const ScalingTriple& t) {
  t.validate();
  return t.alpha * rho / (t.beta * t.beta);
}

double scaled_rho(double rho, const GraphFormScaling& t) {
  t.validate();
  return t.alpha * t.delta * t.delta * rho;
}

SolverState scale_iterates(const SolverState& state, const ScalingTriple& t) {
  t.validate();
  SolverState out;
  out.k = state.k;
  out.rho = scaled_rho(state.rho, t);
  out.x = state.x / t.gamma;
  out.z = state.z / t.gamma;
  out.z_prev = state.z_prev / t.gamma;
  out.u = (t.alpha / t.beta) * state.y() / out.rho;
  return out;
}

SolverState scale_iterates(const SolverState& state, const GraphFormScaling& t) {
  t.validate();
  SolverState out;
  out.k = state.k;
  out.rho = scaled_rho(state.rho, t);
  out.x = state.x / t.gamma;
  out.z = state.z / t.delta;
  out.z_prev = state.z_prev / t.delta;
  out.u = t.alpha * t.delta * state.y() / out.rho;
  return out;
}

EquivarianceReport verify_equivariance(const Problem& problem, const ScalingTriple& t,
                                       int k_max, double rho0,
                                       std::optional<PenaltyConfig> policy,
                                       std::optional<PenaltyConfig> policy_scaled,
                                       double tolerance, const StoppingConfig& stop) {
  t.validate();
  if (k_max < 1) throw ConfigError("verify_equivariance: k_max must be >= 1");
  if (policy) policy->validate();
  if (policy_scaled) policy_scaled->validate();
  if (!policy_scaled) policy_scaled = policy;

  // Wrap the problem without owning it; lockstep keeps both alive.
  const std::shared_ptr<const Problem> base(&problem, [](const Problem*) {});
  const std::shared_ptr<Problem> scaled = scale_problem(base, t);

  EquivarianceReport report;
  report.k_max = k_max;
  report.tolerance = tolerance;

  SolverState sb = zero_state(problem, rho0);
  SolverState ss = zero_state(*scaled, scaled_rho(rho0, t));

  const char* names[] = {"x", "z", "y", "r", "s", "r_nrm_factor", "s_nrm_factor",
                         "r_rel", "s_rel"};
  report.summary.resize(std::size(names));
  for (std::size_t i = 0; i < std::size(names); ++i) report.summary[i].relation = names[i];

  const double ab = t.alpha / t.beta;
  const double ag = t.alpha * t.gamma;
  for (int k = 1; k <= k_max; ++k) {
    sb = iterate(sb, problem);
    ss = iterate(ss, *scaled);
    const ResidualReport rb = residual_report(sb, problem, stop);
    const ResidualReport rs = residual_report(ss, *scaled, stop);

    const Matrix expected_x = sb.x / t.gamma;
    const Matrix expected_z = sb.z / t.gamma;
    const Matrix expected_y = ab * sb.y();
    const double dev[] = {
        relation_deviation(ss.x, expected_x, expected_x.norm()),
        relation_deviation(ss.z, expected_z, expected_z.norm()),
        relation_deviation(ss.y(), expected_y, expected_y.norm()),
        // residuals are differences of large iterates, so deviations are
        // measured against the matching normalization-factor scale
        relation_deviation(rs.r, t.beta * rb.r, t.beta * rb.r_nrm_factor),
        relation_deviation(rs.s, ag * rb.s, ag * rb.s_nrm_factor),
        std::abs(rs.r_nrm_factor - t.beta * rb.r_nrm_factor) /
            (t.beta * rb.r_nrm_factor + 1e-30),
        std::abs(rs.s_nrm_factor - ag * rb.s_nrm_factor) / (ag * rb.s_nrm_factor + 1e-30),
        std::abs(rs.r_rel_norm - rb.r_rel_norm) / (std::abs(rb.r_rel_norm) + 1.0),
        std::abs(rs.s_rel_norm - rb.s_rel_norm) / (std::abs(rb.s_rel_norm) + 1.0),
    };
    for (std::size_t i = 0; i < std::size(names); ++i) {
      report.rows.push_back({names[i], k, dev[i]});
      if (dev[i] > report.summary[i].max_deviation) {
        report.summary[i].max_deviation = dev[i];
        report.summary[i].worst_k = k;
      }
      if (dev[i] > tolerance && !report.first_violation) {
        report.first_violation = EquivarianceRow{names[i], k, dev[i]};
      }
    }

    if (rb.stop_satisfied != rs.stop_satisfied && report.first_stop_mismatch < 0) {
      report.first_stop_mismatch = k;
    }

    if (policy && k % policy->period == 0) {
      const auto pick = [](const ResidualReport& r, const PenaltyConfig& cfg) {
        return cfg.residual_flavor == ResidualFlavor::Standard
                   ? std::pair{r.r_norm, r.s_norm}
                   : std::pair{r.r_rel_norm, r.s_rel_norm};
      };
      const auto [rbn, sbn] = pick(rb, *policy);
      const auto [rsn, ssn] = pick(rs, *policy_scaled);
      const RhoUpdate ub = decide_rho(sb.rho, rbn, sbn, *policy);
      const RhoUpdate us = decide_rho(ss.rho, rsn, ssn, *policy_scaled);
      report.base_decisions.push_back(ub.tag);
      report.scaled_decisions.push_back(us.tag);
      report.base_taus.push_back(ub.tau);
      report.scaled_taus.push_back(us.tau);
      if (ub.tag != us.tag && report.first_decision_mismatch < 0) {
        report.first_decision_mismatch =
            static_cast<int>(report.base_decisions.size()) - 1;
      }
      if (ub.rho != sb.rho) rescale_dual(sb, ub.rho);
      if (us.rho != ss.rho) rescale_dual(ss, us.rho);
    }
  }

  report.passed = !report.first_violation.has_value();
  return report;
}

void write_equivariance_csv(const EquivarianceReport& report, std::ostream& out) {
  out << "relation,k,deviation\n";
  for (const EquivarianceRow& row : report.rows) {
    out << row.relation << ',' << row.k << ',' << row.deviation << '\n';
  }
}

}  // namespace admm
