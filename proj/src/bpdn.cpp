#include "admm/bpdn.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "admm/proximal.hpp"

namespace admm {

BpdnProblem::BpdnProblem(Matrix dictionary, Matrix signal, double lambda)
    : lambda_(lambda) {
  if (dictionary.rows() != signal.rows()) {
    throw ConfigError("bpdn: dictionary and signal row counts differ");
  }
  if (dictionary.rows() < 1 || dictionary.cols() < 1 || signal.cols() < 1) {
    throw ConfigError("bpdn: empty dictionary or signal");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("bpdn: lambda must be positive");
  }
  if (!dictionary.allFinite() || !signal.allFinite()) {
    throw NumericalError("bpdn: non-finite dictionary or signal");
  }
  dict_ = std::make_shared<const Matrix>(std::move(dictionary));
  sigma_ = std::make_shared<const Matrix>(std::move(signal));
  dt_sigma_ = std::make_shared<const Matrix>(dict_->transpose() * (*sigma_));
  wide_ = dict_->cols() > dict_->rows();
  c_zero_ = Matrix::Zero(dict_->cols(), sigma_->cols());
}

BpdnProblem::BpdnProblem(const BpdnProblem& other)
    : dict_(other.dict_),
      sigma_(other.sigma_),
      dt_sigma_(other.dt_sigma_),
      lambda_(other.lambda_),
      wide_(other.wide_),
      c_zero_(other.c_zero_) {}  // fresh factorization cache

BpdnProblem BpdnProblem::with_lambda(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("bpdn: lambda must be positive");
  }
  BpdnProblem copy(*this);
  copy.lambda_ = lambda;
  return copy;
}

void BpdnProblem::ensure_factorization(double rho) const {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw NumericalError("bpdn: cannot factorize with non-positive rho");
  }
  if (cache_.rho == rho) return;
  const Matrix& d = *dict_;
  Matrix gram = wide_ ? Matrix(d * d.transpose()) : Matrix(d.transpose() * d);
  gram.diagonal().array() += rho;
  cache_.llt.compute(gram);
  if (cache_.llt.info() != Eigen::Success) {
    throw NumericalError("bpdn: Cholesky factorization failed");
  }
  cache_.rho = rho;
}

Matrix BpdnProblem::solve_x(const Matrix& z, const Matrix& u, double rho) const {
  ensure_factorization(rho);
  const Matrix b = *dt_sigma_ + rho * (z - u);
  if (wide_) {
    // (D'D + rho I)^-1 = (I - D'(DD' + rho I)^-1 D) / rho
    return (b - dict_->transpose() * cache_.llt.solve((*dict_) * b)) / rho;
  }
  return cache_.llt.solve(b);
}

Matrix BpdnProblem::solve_z(const Matrix& x, const Matrix& u, double rho) const {
  if (!(rho > 0.0)) throw ConfigError("bpdn: rho must be positive");
  return soft_threshold(x + u, lambda_ / rho);
}

double BpdnProblem::f(const Matrix& x) const {
  return 0.5 * ((*dict_) * x - *sigma_).squaredNorm();
}

double BpdnProblem::g(const Matrix& z) const { return lambda_ * z.lpNorm<1>(); }

Dims BpdnProblem::dims() const {
  const Index m = dict_->cols();
  return {m, m, m};
}

double default_lambda(const Matrix& dictionary, const Matrix& signal) {
  return 0.1 * (dictionary.transpose() * signal).lpNorm<Eigen::Infinity>();
}

RandomRecovery assemble_random_recovery(std::uint64_t seed, Index n_rows, Index n_atoms,
                                        int sparsity, double noise_sd,
                                        const RandomRecoveryOptions& opts) {
  if (n_rows < 1 || n_atoms < 1 || opts.columns < 1) {
    throw ConfigError("assemble_random_recovery: sizes must be positive");
  }
  if (sparsity < 0 || sparsity >= n_atoms) {
    throw ConfigError("assemble_random_recovery: sparsity must be in [0, n_atoms)");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix d(n_rows, n_atoms);
  for (Index j = 0; j < n_atoms; ++j) {
    for (Index i = 0; i < n_rows; ++i) d(i, j) = opts.dict_sd * gauss(rng);
  }
  if (opts.normalize_columns) {
    for (Index j = 0; j < n_atoms; ++j) {
      const double nrm = d.col(j).norm();
      if (nrm > 0.0) d.col(j) /= nrm;
    }
  }

  Matrix x_true = Matrix::Zero(n_atoms, opts.columns);
  std::vector<Index> indices(static_cast<std::size_t>(n_atoms));
  for (Index col = 0; col < opts.columns; ++col) {
    std::iota(indices.begin(), indices.end(), Index{0});
    // partial Fisher-Yates: first `sparsity` entries become the support
    for (int t = 0; t < sparsity; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, indices.size() - 1);
      std::swap(indices[static_cast<std::size_t>(t)], indices[pick(rng)]);
      x_true(indices[static_cast<std::size_t>(t)], col) = gauss(rng);
    }
  }

  Matrix sigma = d * x_true;
  for (Index j = 0; j < sigma.cols(); ++j) {
    for (Index i = 0; i < sigma.rows(); ++i) sigma(i, j) += noise_sd * gauss(rng);
  }

  const double lambda =
      opts.lambda > 0.0 ? opts.lambda : default_lambda(d, sigma);
  return {BpdnProblem(std::move(d), std::move(sigma), lambda), std::move(x_true)};
}

}  // namespace admm
