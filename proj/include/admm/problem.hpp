#pragma once

#include "admm/types.hpp"

namespace admm {

/// A problem min f(x) + g(z) subject to A x + B z = c, presented through
/// the pieces an operator-splitting solver needs: the two partial
/// minimizers of the augmented Lagrangian and the constraint maps.
///
/// Iterates are dense matrices whose columns are independent measurement
/// vectors (single-column for ordinary problems); all norms taken over
/// iterates are Frobenius norms, so a multi-column problem is treated as
/// one joint problem.
class Problem {
 public:
  virtual ~Problem() = default;

  /// argmin_x f(x) + (rho/2) ||A x + B z - c + u||^2
  virtual Matrix solve_x(const Matrix& z, const Matrix& u, double rho) const = 0;

  /// argmin_z g(z) + (rho/2) ||A x + B z - c + u||^2
  virtual Matrix solve_z(const Matrix& x, const Matrix& u, double rho) const = 0;

  virtual Matrix apply_A(const Matrix& x) const = 0;
  virtual Matrix apply_At(const Matrix& w) const = 0;
  virtual Matrix apply_B(const Matrix& z) const = 0;

  /// Constraint right-hand side, p x cols().
  virtual const Matrix& c() const = 0;

  virtual double f(const Matrix& x) const = 0;
  virtual double g(const Matrix& z) const = 0;

  virtual Dims dims() const = 0;

  /// Number of measurement columns carried by every iterate.
  virtual Index cols() const { return 1; }

  double functional(const Matrix& x, const Matrix& z) const { return f(x) + g(z); }
};

}  // namespace admm
