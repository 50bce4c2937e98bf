// Benchmark and verification runner for the residual-balancing solver
// library: parameter sweeps over (policy, lambda, xi, rho0) grids,
// aggregation of their results, scaling-equivariance checks on live runs,
// and a sparse-recovery comparison of the penalty policies.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "admm/bpdn.hpp"
#include "admm/matrix_io.hpp"
#include "admm/scaling.hpp"
#include "admm/solver.hpp"
#include "admm/sweep.hpp"

namespace {

struct PenaltyKnobs {
  double mu = 10.0;
  double tau = 2.0;
  double tau_max = 100.0;
  int period = 0;  // 0 selects the per-kind default (10; 1 for cbpdn)
};

void add_penalty_flags(CLI::App* cmd, PenaltyKnobs& knobs) {
  cmd->add_option("--mu", knobs.mu, "balance threshold mu");
  cmd->add_option("--tau", knobs.tau, "fixed rho multiplier tau");
  cmd->add_option("--tau-max", knobs.tau_max, "adaptive tau bound");
  cmd->add_option("--period", knobs.period, "iterations between policy evaluations");
}

void add_stopping_flags(CLI::App* cmd, admm::StoppingConfig& stop, std::string& mode) {
  cmd->add_option("--eps-rel", stop.eps_rel, "relative stopping tolerance");
  cmd->add_option("--eps-abs", stop.eps_abs, "absolute stopping tolerance");
  cmd->add_option("--max-iter", stop.max_iter, "iteration cap");
  cmd->add_option("--stop-mode", mode, "standard|relative")
      ->check(CLI::IsMember({"standard", "relative"}));
}

admm::StopMode parse_stop_mode(const std::string& mode) {
  return mode == "standard" ? admm::StopMode::Standard : admm::StopMode::Relative;
}

std::vector<admm::PolicySpec> build_policies(const std::string& list,
                                             const PenaltyKnobs& knobs, int period) {
  std::vector<admm::PolicySpec> policies;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) {
      policies.push_back(
          admm::parse_policy(token, knobs.mu, knobs.tau, knobs.tau_max, period));
    }
  }
  return policies;
}

int run_sweep_command(const admm::ExperimentSpec& spec, const std::string& out_path) {
  const std::vector<admm::SweepRow> rows = admm::run_sweep(spec);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  admm::write_sweep_csv(rows, out);
  int failures = 0;
  for (const auto& row : rows) {
    if (!row.error.empty()) ++failures;
  }
  std::cout << rows.size() << " cells -> " << out_path;
  if (failures > 0) std::cout << " (" << failures << " failed cells, see error column)";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual-balancing ADMM benchmark runner"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "run a (policy, lambda, xi, rho0) grid");
  std::string kind = "bpdn-random";
  std::string out_path = "sweep.csv";
  std::string lambda_grid = "log:0.001:0.3:6";
  std::string xi_grid = "1";
  std::string rho0_grid = "log:0.1:10000:11";
  std::string policy_list = "fixed,standard,standard-adaptive,relative,relative-adaptive";
  std::string stop_mode = "relative";
  PenaltyKnobs knobs;
  admm::ExperimentSpec spec;
  spec.stopping.eps_rel = 1e-3;
  spec.stopping.eps_abs = 0.0;
  spec.stopping.max_iter = 500;

  sweep->add_option("--kind", kind, "bpdn-random|bpdn-file|cbpdn")
      ->check(CLI::IsMember({"bpdn-random", "bpdn-file", "cbpdn"}));
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--seed", spec.seed, "RNG seed");
  sweep->add_option("--workers", spec.workers, "worker threads (0 = all cores)")
      ->envname("ADMM_BENCH_WORKERS");

  sweep->add_option("--n", spec.n_rows, "signal dimension (bpdn-random)");
  sweep->add_option("--m", spec.n_atoms, "dictionary atoms (bpdn-random)");
  sweep->add_option("--sparsity", spec.sparsity, "nonzeros per column (bpdn-random)");
  sweep->add_option("--noise-sd", spec.noise_sd, "noise standard deviation");
  sweep->add_option("--dict-sd", spec.dict_sd, "dictionary entry standard deviation");
  sweep->add_flag("--normalize-columns", spec.normalize_columns,
                  "normalize dictionary columns");
  sweep->add_option("--k-cols", spec.columns, "measurement vectors solved jointly");
  sweep->add_option("--dict", spec.dict_path, "dictionary file (bpdn-file)");
  sweep->add_option("--signal", spec.signal_path, "signal file (bpdn-file)");
  sweep->add_option("--image", spec.image_paths, "PGM image(s) (cbpdn)");
  sweep->add_option("--filters", spec.filters_path,
                    "filter matrix file, one flattened square filter per row");
  sweep->add_option("--filter-count", spec.filter_count, "random filter count (cbpdn)");
  sweep->add_option("--filter-size", spec.filter_size, "random filter side (cbpdn)");
  sweep->add_option("--lambda-l", spec.lambda_l, "highpass preprocessing weight");

  sweep->add_option("--lambda", lambda_grid, "lambda grid (log:lo:hi:count or list)");
  sweep->add_option("--xi", xi_grid, "xi grid");
  sweep->add_option("--rho0", rho0_grid, "rho0 grid");
  sweep->add_flag("--rho0-times-lambda", spec.rho0_times_lambda,
                  "interpret rho0 grid as multiples of lambda");
  sweep->add_option("--policies", policy_list,
                    "comma list of fixed|standard|xi|relative[-adaptive]");
  add_penalty_flags(sweep, knobs);
  add_stopping_flags(sweep, spec.stopping, stop_mode);

  // ---- aggregate ----
  auto* agg = app.add_subcommand("aggregate", "summarize a sweep CSV over rho0");
  std::string agg_in, agg_out = "summary.csv";
  agg->add_option("--in", agg_in, "sweep CSV")->required();
  agg->add_option("--out", agg_out, "summary CSV path");

  // ---- verify-scaling ----
  auto* verify = app.add_subcommand(
      "verify-scaling", "lockstep equivariance check of a problem and its scaled twin");
  struct {
    admm::Index n = 16, m = 32;
    int sparsity = 4;
    double noise_sd = 0.1;
    std::uint64_t seed = 0;
    double alpha = 1.0, beta = 1.0, gamma = 1.0;
    int iters = 100;
    double rho0 = 1.0;
    double xi = 1.0;
    double tolerance = 1e-9;
    std::string policy = "none";
    std::string out;
  } vs;
  verify->add_option("--n", vs.n, "signal dimension");
  verify->add_option("--m", vs.m, "dictionary atoms");
  verify->add_option("--sparsity", vs.sparsity, "nonzeros in the reference vector");
  verify->add_option("--noise-sd", vs.noise_sd, "noise standard deviation");
  verify->add_option("--seed", vs.seed, "RNG seed");
  verify->add_option("--alpha", vs.alpha, "objective scale")->required();
  verify->add_option("--beta", vs.beta, "constraint scale")->required();
  verify->add_option("--gamma", vs.gamma, "variable scale")->required();
  verify->add_option("--iters", vs.iters, "lockstep iterations");
  verify->add_option("--rho0", vs.rho0, "base-run penalty");
  verify->add_option("--xi", vs.xi, "xi for balancing policies");
  verify->add_option("--tolerance", vs.tolerance, "relation tolerance");
  verify->add_option("--policy", vs.policy, "none|standard|xi|relative[-adaptive]");
  verify->add_option("--out", vs.out, "write relation,k,deviation rows to this CSV");

  // ---- recover ----
  auto* recover = app.add_subcommand(
      "recover", "sparse recovery on a random unnormalized dictionary, one row per policy");
  struct {
    admm::Index n = 128, m = 1024;
    int sparsity = 16;
    double noise_sd = 0.5;
    std::uint64_t seed = 0;
    double rho0 = 1.0;
    double lambda = 0.0;
    std::string policies = "standard,relative-adaptive";
    std::string out;
  } rc;
  admm::StoppingConfig rc_stop{0.0, 1e-4, 1000, admm::StopMode::Relative};
  std::string rc_stop_mode = "relative";
  PenaltyKnobs rc_knobs;
  recover->add_option("--n", rc.n, "signal dimension");
  recover->add_option("--m", rc.m, "dictionary atoms");
  recover->add_option("--sparsity", rc.sparsity, "nonzeros in the reference vector");
  recover->add_option("--noise-sd", rc.noise_sd, "noise standard deviation");
  recover->add_option("--seed", rc.seed, "RNG seed");
  recover->add_option("--rho0", rc.rho0, "initial penalty for every policy");
  recover->add_option("--lambda", rc.lambda, "sparsity weight (0 = scale rule)");
  recover->add_option("--policies", rc.policies, "comma list of policies");
  recover->add_option("--out", rc.out, "CSV path (default: stdout)");
  add_penalty_flags(recover, rc_knobs);
  add_stopping_flags(recover, rc_stop, rc_stop_mode);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      spec.kind = kind == "bpdn-random" ? admm::ProblemKind::BpdnRandom
                  : kind == "bpdn-file" ? admm::ProblemKind::BpdnFile
                                        : admm::ProblemKind::Cbpdn;
      spec.stopping.mode = parse_stop_mode(stop_mode);
      const int period =
          knobs.period > 0 ? knobs.period : (spec.kind == admm::ProblemKind::Cbpdn ? 1 : 10);
      spec.policies = build_policies(policy_list, knobs, period);
      spec.lambda_grid = admm::parse_grid(lambda_grid);
      spec.xi_grid = admm::parse_grid(xi_grid);
      spec.rho0_grid = admm::parse_grid(rho0_grid);
      return run_sweep_command(spec, out_path);
    }

    if (agg->parsed()) {
      const std::vector<admm::AggregateRow> rows = admm::aggregate_file(agg_in);
      std::ofstream out(agg_out);
      if (!out) {
        std::cerr << "cannot write " << agg_out << "\n";
        return 1;
      }
      admm::write_aggregate_csv(rows, out);
      std::cout << rows.size() << " groups -> " << agg_out << "\n";
      return 0;
    }

    if (verify->parsed()) {
      admm::RandomRecoveryOptions opts;
      const admm::RandomRecovery rec = admm::assemble_random_recovery(
          vs.seed, vs.n, vs.m, vs.sparsity, vs.noise_sd, opts);
      std::optional<admm::PenaltyConfig> policy;
      if (vs.policy != "none") {
        policy = admm::parse_policy(vs.policy, 10.0, 2.0, 100.0, 10).config;
        policy->xi = vs.xi;
      }
      const admm::ScalingTriple triple{vs.alpha, vs.beta, vs.gamma};
      const admm::EquivarianceReport report = admm::verify_equivariance(
          rec.problem, triple, vs.iters, vs.rho0, policy, std::nullopt, vs.tolerance);
      if (!vs.out.empty()) {
        std::ofstream out(vs.out);
        if (!out) {
          std::cerr << "cannot write " << vs.out << "\n";
          return 1;
        }
        admm::write_equivariance_csv(report, out);
      }
      for (const auto& rel : report.summary) {
        std::cout << rel.relation << ": max deviation " << rel.max_deviation << " at k="
                  << rel.worst_k << "\n";
      }
      if (policy) {
        std::cout << "decision sequences "
                  << (report.decisions_match() ? "match" : "diverge at update index " +
                          std::to_string(report.first_decision_mismatch))
                  << "\n";
      }
      const bool ok = report.passed && report.decisions_match();
      std::cout << (ok ? "PASS" : "FAIL") << " (tolerance " << vs.tolerance << ")\n";
      return ok ? 0 : 1;
    }

    if (recover->parsed()) {
      rc_stop.mode = parse_stop_mode(rc_stop_mode);
      admm::RandomRecoveryOptions opts;
      opts.lambda = rc.lambda;
      const admm::RandomRecovery rec = admm::assemble_random_recovery(
          rc.seed, rc.n, rc.m, rc.sparsity, rc.noise_sd, opts);
      const int period = rc_knobs.period > 0 ? rc_knobs.period : 10;
      const std::vector<admm::PolicySpec> policies =
          build_policies(rc.policies, rc_knobs, period);

      std::ostringstream csv;
      csv << "policy,residual_flavor,lambda,rho0,iterations,capped,final_fval,"
             "final_r_rel,final_s_rel,recovery_rel_err\n";
      for (const admm::PolicySpec& policy : policies) {
        admm::SolverState state = admm::zero_state(rec.problem, rc.rho0);
        const admm::IterationTrace trace =
            admm::run(rec.problem, state, policy.config, rc_stop);
        const double err =
            (state.z - rec.x_true).norm() / std::max(rec.x_true.norm(), 1e-30);
        csv << policy.name << ','
            << (policy.config.variant == admm::PolicyVariant::Fixed
                    ? "none"
                    : to_string(policy.config.residual_flavor))
            << ',' << rec.problem.lambda() << ',' << rc.rho0 << ',' << trace.iterations()
            << ',' << (trace.converged() ? 0 : 1) << ',' << trace.last().fval << ','
            << trace.last().r_rel_norm << ',' << trace.last().s_rel_norm << ',' << err
            << '\n';
      }
      if (rc.out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream out(rc.out);
        if (!out) {
          std::cerr << "cannot write " << rc.out << "\n";
          return 1;
        }
        out << csv.str();
        std::cout << policies.size() << " policies -> " << rc.out << "\n";
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
