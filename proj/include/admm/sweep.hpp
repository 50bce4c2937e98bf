#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "admm/penalty.hpp"
#include "admm/residuals.hpp"

namespace admm {

enum class ProblemKind { BpdnRandom, BpdnFile, Cbpdn };

/// One policy to sweep. `name` is what the CSV's policy column carries;
/// the config's xi is overwritten by the grid value cell by cell (ignored
/// by Fixed and StandardBalance).
struct PolicySpec {
  std::string name;
  PenaltyConfig config;
};

/// Parses fixed | standard | xi | relative, each optionally suffixed with
/// "-adaptive". mu/tau/tau_max/period are filled from the arguments.
PolicySpec parse_policy(const std::string& token, double mu, double tau, double tau_max,
                        int period);

/// `count` logarithmically spaced values from lo to hi inclusive.
/// Endpoints must be positive; count >= 1 uses lo alone.
std::vector<double> log_grid(double lo, double hi, int count);

/// Grid syntax: "log:lo:hi:count" or a comma-separated value list.
std::vector<double> parse_grid(const std::string& text);

struct ExperimentSpec {
  ProblemKind kind = ProblemKind::BpdnRandom;

  // bpdn-random
  Index n_rows = 64;
  Index n_atoms = 128;
  int sparsity = 8;
  double noise_sd = 0.1;
  double dict_sd = 1.0;
  bool normalize_columns = false;
  Index columns = 1;

  // bpdn-file
  std::filesystem::path dict_path;
  std::filesystem::path signal_path;

  // cbpdn
  std::vector<std::filesystem::path> image_paths;
  std::filesystem::path filters_path;  // empty selects random filters
  Index filter_count = 8;
  Index filter_size = 8;
  double lambda_l = 5.0;

  std::vector<double> lambda_grid;
  std::vector<double> xi_grid{1.0};
  std::vector<double> rho0_grid;
  bool rho0_times_lambda = false;  ///< interpret rho0 grid as multiples of lambda

  std::vector<PolicySpec> policies;
  StoppingConfig stopping;
  std::uint64_t seed = 0;
  int workers = 0;  ///< <= 0 selects hardware concurrency

  void validate() const;
};

struct SweepRow {
  std::string policy;
  std::string residual_flavor;
  double lambda = 0.0;
  double xi = 0.0;
  double rho0 = 0.0;
  int iterations = 0;
  bool capped = false;
  double final_fval = 0.0;
  double final_r_rel = 0.0;
  double final_s_rel = 0.0;
  double wall_ms = 0.0;
  std::string error;  // empty on success
};

/// Runs every (policy, lambda, xi, rho0) cell of the grid on a worker
/// pool. Row order is the grid order regardless of completion order, and
/// all columns except wall_ms are deterministic given the spec. Per-cell
/// failures are recorded in the row's error column.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

struct AggregateRow {
  std::string policy;
  std::string residual_flavor;
  std::string lambda;  // grid coordinates kept as written
  std::string xi;
  int cells = 0;
  double mean_iterations = 0.0;
  double sd_iterations = 0.0;  // population standard deviation over rho0
  int capped_cells = 0;
};

/// Per (policy, flavor, lambda, xi): mean and standard deviation of the
/// iteration counts over the rho0 grid. Groups of the "fixed" policy
/// additionally emit a "fixed_min" row holding the minimum. Throws
/// ConfigError naming the line on malformed input.
std::vector<AggregateRow> aggregate(std::istream& in);
std::vector<AggregateRow> aggregate_file(const std::filesystem::path& path);

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out);

}  // namespace admm
