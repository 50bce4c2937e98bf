#include "admm/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "admm/bpdn.hpp"
#include "admm/cbpdn.hpp"
#include "admm/matrix_io.hpp"
#include "admm/solver.hpp"

namespace admm {

namespace {

constexpr const char* kSweepSchema = "# admm-bench sweep csv, schema 1";
constexpr const char* kAggregateSchema = "# admm-bench aggregate csv, schema 1";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > 0.0)) {
    throw ConfigError("log grid endpoints must be positive");
  }
  if (count < 1) throw ConfigError("log grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double step = (std::log10(hi) - std::log10(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) {
    grid.push_back(std::pow(10.0, std::log10(lo) + step * i));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.rfind("log:", 0) == 0) {
    double lo = 0, hi = 0;
    int count = 0;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text.substr(4));
    if (!(in >> lo >> colon1 >> hi >> colon2 >> count) || colon1 != ':' || colon2 != ':') {
      throw ConfigError("bad grid \"" + text + "\", expected log:lo:hi:count");
    }
    return log_grid(lo, hi, count);
  }
  std::vector<double> grid;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      grid.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ConfigError("bad grid value \"" + cell + "\"");
    }
  }
  if (grid.empty()) throw ConfigError("empty grid \"" + text + "\"");
  return grid;
}

PolicySpec parse_policy(const std::string& token, double mu, double tau, double tau_max,
                        int period) {
  std::string base = token;
  bool adaptive = false;
  const std::string suffix = "-adaptive";
  if (base.size() > suffix.size() &&
      base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
    adaptive = true;
    base.resize(base.size() - suffix.size());
  }

  PenaltyConfig cfg;
  if (base == "fixed") {
    if (adaptive) throw ConfigError("policy \"fixed\" has no adaptive form");
    cfg = fixed_penalty();
  } else if (base == "standard") {
    cfg = standard_balance(mu, tau, period);
  } else if (base == "xi") {
    cfg = xi_balance(1.0, mu, tau, period);
  } else if (base == "relative") {
    cfg = relative_balance(1.0, mu, tau, period);
  } else {
    throw ConfigError("unknown policy \"" + token +
                      "\" (expected fixed|standard|xi|relative[-adaptive])");
  }
  if (adaptive) {
    cfg.tau_mode = TauMode::Adaptive;
    cfg.tau_max = tau_max;
  }
  return {token, cfg};
}

void ExperimentSpec::validate() const {
  if (lambda_grid.empty() || xi_grid.empty() || rho0_grid.empty()) {
    throw ConfigError("sweep: all grids must be non-empty");
  }
  for (double v : lambda_grid) {
    if (!(v > 0.0)) throw ConfigError("sweep: lambda grid values must be positive");
  }
  for (double v : xi_grid) {
    if (!(v > 0.0)) throw ConfigError("sweep: xi grid values must be positive");
  }
  for (double v : rho0_grid) {
    if (!(v > 0.0)) throw ConfigError("sweep: rho0 grid values must be positive");
  }
  if (policies.empty()) throw ConfigError("sweep: no policies selected");
  stopping.validate();
  if (kind == ProblemKind::BpdnFile && (dict_path.empty() || signal_path.empty())) {
    throw ConfigError("sweep: bpdn-file needs dictionary and signal paths");
  }
  if (kind == ProblemKind::Cbpdn && image_paths.empty()) {
    throw ConfigError("sweep: cbpdn needs at least one image");
  }
}

namespace {

// Problem factory per lambda; clones share read-only data.
using ProblemFactory = std::function<std::unique_ptr<Problem>(double lambda)>;

ProblemFactory make_factory(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::BpdnRandom: {
      RandomRecoveryOptions opts;
      opts.dict_sd = spec.dict_sd;
      opts.normalize_columns = spec.normalize_columns;
      opts.columns = spec.columns;
      opts.lambda = spec.lambda_grid.front();
      auto proto = std::make_shared<BpdnProblem>(
          assemble_random_recovery(spec.seed, spec.n_rows, spec.n_atoms, spec.sparsity,
                                   spec.noise_sd, opts)
              .problem);
      return [proto](double lambda) {
        return std::make_unique<BpdnProblem>(proto->with_lambda(lambda));
      };
    }
    case ProblemKind::BpdnFile: {
      auto proto = std::make_shared<BpdnProblem>(load_matrix(spec.dict_path),
                                                 load_matrix(spec.signal_path),
                                                 spec.lambda_grid.front());
      return [proto](double lambda) {
        return std::make_unique<BpdnProblem>(proto->with_lambda(lambda));
      };
    }
    case ProblemKind::Cbpdn: {
      std::vector<Matrix> filters;
      if (!spec.filters_path.empty()) {
        // one filter per row, each row a flattened side x side square
        const Matrix packed = load_matrix(spec.filters_path);
        const Index side = static_cast<Index>(std::lround(std::sqrt(
            static_cast<double>(packed.cols()))));
        if (side * side != packed.cols()) {
          throw ConfigError("sweep: filter rows must flatten square filters");
        }
        for (Index i = 0; i < packed.rows(); ++i) {
          filters.push_back(
              Eigen::Map<const Matrix>(packed.row(i).eval().data(), side, side));
        }
      } else {
        filters = random_unit_filters(spec.seed, spec.filter_count, spec.filter_size);
      }
      std::vector<Matrix> images;
      for (const auto& path : spec.image_paths) {
        const Matrix img = load_pgm(path);
        images.push_back(highpass_preprocess(img, spec.lambda_l).second);
      }
      auto proto = std::make_shared<CbpdnProblem>(std::move(filters), std::move(images),
                                                  spec.lambda_grid.front());
      return [proto](double lambda) {
        return std::make_unique<CbpdnProblem>(proto->with_lambda(lambda));
      };
    }
  }
  throw ConfigError("sweep: unknown problem kind");
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const ProblemFactory factory = make_factory(spec);

  struct Cell {
    const PolicySpec* policy;
    double lambda, xi, rho0_grid_value;
  };
  std::vector<Cell> cells;
  for (const PolicySpec& policy : spec.policies) {
    for (double lambda : spec.lambda_grid) {
      for (double xi : spec.xi_grid) {
        for (double rho0 : spec.rho0_grid) {
          cells.push_back({&policy, lambda, xi, rho0});
        }
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      const Cell& cell = cells[i];
      SweepRow& row = rows[i];
      row.policy = cell.policy->name;
      row.residual_flavor = cell.policy->config.variant == PolicyVariant::Fixed
                                ? "none"
                                : to_string(cell.policy->config.residual_flavor);
      row.lambda = cell.lambda;
      row.xi = cell.xi;
      row.rho0 =
          spec.rho0_times_lambda ? cell.rho0_grid_value * cell.lambda : cell.rho0_grid_value;
      const auto start = std::chrono::steady_clock::now();
      try {
        const std::unique_ptr<Problem> problem = factory(cell.lambda);
        PenaltyConfig cfg = cell.policy->config;
        cfg.xi = cell.xi;
        const IterationTrace trace = run(*problem, row.rho0, cfg, spec.stopping);
        row.iterations = trace.iterations();
        row.capped = !trace.converged();
        row.final_fval = trace.last().fval;
        row.final_r_rel = trace.last().r_rel_norm;
        row.final_s_rel = trace.last().s_rel_norm;
      } catch (const std::exception& ex) {
        row.iterations = spec.stopping.max_iter;
        row.capped = true;
        row.final_fval = std::nan("");
        row.final_r_rel = std::nan("");
        row.final_s_rel = std::nan("");
        row.error = ex.what();
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };

  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepSchema << '\n';
  out << "policy,residual_flavor,lambda,xi,rho0,iterations,capped,final_fval,"
         "final_r_rel,final_s_rel,wall_ms,error\n";
  for (const SweepRow& row : rows) {
    out << row.policy << ',' << row.residual_flavor << ',' << format_double(row.lambda)
        << ',' << format_double(row.xi) << ',' << format_double(row.rho0) << ','
        << row.iterations << ',' << (row.capped ? 1 : 0) << ','
        << format_double(row.final_fval) << ',' << format_double(row.final_r_rel) << ','
        << format_double(row.final_s_rel) << ',' << format_double(row.wall_ms) << ','
        << row.error << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<AggregateRow> aggregate(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw ConfigError("aggregate: no header row found");

  const auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ConfigError("aggregate: line " + std::to_string(line_no) +
                      ": missing column \"" + name + "\"");
  };
  const std::size_t col_policy = column("policy");
  const std::size_t col_flavor = column("residual_flavor");
  const std::size_t col_lambda = column("lambda");
  const std::size_t col_xi = column("xi");
  const std::size_t col_iter = column("iterations");
  const std::size_t col_capped = column("capped");

  struct Group {
    std::vector<double> iterations;
    int capped = 0;
  };
  // key on the textual grid coordinates so grouping is exact
  std::map<std::array<std::string, 4>, Group> groups;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() < header.size()) {
      throw ConfigError("aggregate: line " + std::to_string(line_no) +
                        ": expected " + std::to_string(header.size()) + " columns, got " +
                        std::to_string(cells.size()));
    }
    Group& group = groups[{cells[col_policy], cells[col_flavor], cells[col_lambda],
                           cells[col_xi]}];
    try {
      group.iterations.push_back(std::stod(cells[col_iter]));
      group.capped += std::stoi(cells[col_capped]) != 0 ? 1 : 0;
    } catch (const std::exception&) {
      throw ConfigError("aggregate: line " + std::to_string(line_no) + ": bad number");
    }
  }

  std::vector<AggregateRow> rows;
  for (const auto& [key, group] : groups) {
    AggregateRow row;
    row.policy = key[0];
    row.residual_flavor = key[1];
    row.lambda = key[2];
    row.xi = key[3];
    row.cells = static_cast<int>(group.iterations.size());
    double sum = 0.0;
    for (double v : group.iterations) sum += v;
    row.mean_iterations = sum / row.cells;
    double var = 0.0;
    for (double v : group.iterations) {
      var += (v - row.mean_iterations) * (v - row.mean_iterations);
    }
    row.sd_iterations = std::sqrt(var / row.cells);  // population sd over rho0
    row.capped_cells = group.capped;
    rows.push_back(row);

    if (key[0] == "fixed") {
      AggregateRow best = row;
      best.policy = "fixed_min";
      double lo = group.iterations.front();
      for (double v : group.iterations) lo = std::min(lo, v);
      best.mean_iterations = lo;
      best.sd_iterations = 0.0;
      rows.push_back(best);
    }
  }
  return rows;
}

std::vector<AggregateRow> aggregate_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open for reading");
  return aggregate(in);
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << kAggregateSchema << '\n';
  out << "policy,residual_flavor,lambda,xi,cells,mean_iterations,sd_iterations,"
         "capped_cells\n";
  for (const AggregateRow& row : rows) {
    out << row.policy << ',' << row.residual_flavor << ',' << row.lambda << ',' << row.xi
        << ',' << row.cells << ',' << format_double(row.mean_iterations) << ','
        << format_double(row.sd_iterations) << ',' << row.capped_cells << '\n';
  }
}

}  // namespace admm
