#pragma once

#include <Eigen/Cholesky>

#include <cstdint>
#include <memory>

#include "admm/problem.hpp"

namespace admm {

/// Sparse coding problem min_x 1/2 ||D x - sigma||^2 + lambda ||x||_1 in
/// splitting form with A = I, B = -I, c = 0. Multiple measurement vectors
/// are the columns of sigma and are solved jointly.
///
/// The x update solves (D'D + rho I) x = D'sigma + rho (z - u) through a
/// cached Cholesky factorization of the smaller Gram matrix: D'D + rho I
/// directly when the dictionary is tall, or D D' + rho I through the
/// matrix-inversion identity when it is wide. The cache is keyed by rho
/// and rebuilt whenever rho changes.
///
/// Copies share the dictionary and signal (read-only) but carry their own
/// factorization cache, so concurrent runs should each own a copy.
class BpdnProblem final : public Problem {
 public:
  BpdnProblem(Matrix dictionary, Matrix signal, double lambda);

  BpdnProblem(const BpdnProblem& other);
  BpdnProblem& operator=(const BpdnProblem&) = delete;

  Matrix solve_x(const Matrix& z, const Matrix& u, double rho) const override;
  Matrix solve_z(const Matrix& x, const Matrix& u, double rho) const override;
  Matrix apply_A(const Matrix& x) const override { return x; }
  Matrix apply_At(const Matrix& w) const override { return w; }
  Matrix apply_B(const Matrix& z) const override { return -z; }
  const Matrix& c() const override { return c_zero_; }
  double f(const Matrix& x) const override;
  double g(const Matrix& z) const override;
  Dims dims() const override;
  Index cols() const override { return sigma_->cols(); }

  const Matrix& dictionary() const { return *dict_; }
  const Matrix& signal() const { return *sigma_; }
  double lambda() const { return lambda_; }

  /// Same data with a different sparsity weight; shares the dictionary
  /// and signal storage.
  BpdnProblem with_lambda(double lambda) const;

 private:
  void ensure_factorization(double rho) const;

  std::shared_ptr<const Matrix> dict_;      // N x M
  std::shared_ptr<const Matrix> sigma_;     // N x K
  std::shared_ptr<const Matrix> dt_sigma_;  // M x K
  double lambda_;
  bool wide_;  // M > N: factor D D' + rho I instead of D'D + rho I
  Matrix c_zero_;

  mutable struct {
    double rho = -1.0;
    Eigen::LLT<Matrix> llt;
  } cache_;
};

/// 0.1 * ||D' sigma||_inf, a scale-free default for lambda.
double default_lambda(const Matrix& dictionary, const Matrix& signal);

struct RandomRecovery {
  BpdnProblem problem;
  Matrix x_true;
};

struct RandomRecoveryOptions {
  double dict_sd = 1.0;          ///< standard deviation of dictionary entries
  bool normalize_columns = false;
  Index columns = 1;             ///< number of measurement vectors
  double lambda = 0.0;           ///< <= 0 selects default_lambda
};

/// Gaussian dictionary, a sparse reference coefficient vector per column,
/// and a noisy signal sigma = D x_true + noise. Deterministic in `seed`.
RandomRecovery assemble_random_recovery(std::uint64_t seed, Index n_rows, Index n_atoms,
                                        int sparsity, double noise_sd,
                                        const RandomRecoveryOptions& opts = {});

}  // namespace admm
