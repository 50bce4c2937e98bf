#pragma once

// Test-only fixtures and independent oracles. Nothing here may call back
// into the solver paths it is used to check.

#include <cstdint>
#include <functional>
#include <memory>

#include "admm/problem.hpp"

namespace admm::test {

/// Problem with explicit A, B, c matrices and pluggable partial
/// minimizers (which default to throwing, for tests that never solve).
class MatrixProblem final : public Problem {
 public:
  using Solver = std::function<Matrix(const Matrix&, const Matrix&, double)>;
  using Functional = std::function<double(const Matrix&)>;

  MatrixProblem(Matrix a, Matrix b, Matrix c);

  void set_solvers(Solver solve_x, Solver solve_z);
  void set_functionals(Functional f, Functional g);

  Matrix solve_x(const Matrix& z, const Matrix& u, double rho) const override;
  Matrix solve_z(const Matrix& x, const Matrix& u, double rho) const override;
  Matrix apply_A(const Matrix& x) const override { return a_ * x; }
  Matrix apply_At(const Matrix& w) const override { return a_.transpose() * w; }
  Matrix apply_B(const Matrix& z) const override { return b_ * z; }
  const Matrix& c() const override { return c_; }
  double f(const Matrix& x) const override { return f_ ? f_(x) : 0.0; }
  double g(const Matrix& z) const override { return g_ ? g_(z) : 0.0; }
  Dims dims() const override { return {a_.cols(), b_.cols(), c_.rows()}; }
  Index cols() const override { return c_.cols(); }

 private:
  Matrix a_, b_, c_;
  Solver sx_, sz_;
  Functional f_, g_;
};

/// Total-variation style instance with f identically zero:
/// A = [G0; G1; I] stacks circular forward differences over an h x w
/// image above the identity, B = -I, c = (0, 0, s). The x update is a
/// plain least-squares solve, the z update a closed-form prox.
std::shared_ptr<MatrixProblem> make_zero_f_tv_instance(Index h, Index w, double lambda,
                                                       std::uint64_t seed);

/// Proximal-gradient oracle for min 1/2||D x - sigma||^2 + lambda||x||_1,
/// run to a relative iterate change below `tol` (or max_iter).
struct IstaResult {
  Matrix x;
  int iterations;
  double fval;
};
IstaResult ista_bpdn(const Matrix& dictionary, const Matrix& sigma, double lambda,
                     int max_iter = 1000000, double tol = 1e-14);

/// Direct O((hw)^2) circular convolution of a small filter with a map.
Matrix circular_convolve(const Matrix& filter, const Matrix& map);

/// Dense dictionary equivalent to summed circular convolutions: column
/// (m * hw + r + c * h) is filter m circularly shifted by (r, c),
/// flattened column-major.
Matrix block_circulant_dictionary(const std::vector<Matrix>& filters, Index h, Index w);

}  // namespace admm::test
