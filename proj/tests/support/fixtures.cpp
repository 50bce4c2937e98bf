#include "support/fixtures.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "admm/proximal.hpp"

namespace admm::test {

MatrixProblem::MatrixProblem(Matrix a, Matrix b, Matrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.rows() != b_.rows() || a_.rows() != c_.rows()) {
    throw ConfigError("MatrixProblem: A, B, c row counts differ");
  }
}

void MatrixProblem::set_solvers(Solver solve_x, Solver solve_z) {
  sx_ = std::move(solve_x);
  sz_ = std::move(solve_z);
}

void MatrixProblem::set_functionals(Functional f, Functional g) {
  f_ = std::move(f);
  g_ = std::move(g);
}

Matrix MatrixProblem::solve_x(const Matrix& z, const Matrix& u, double rho) const {
  if (!sx_) throw std::logic_error("MatrixProblem: no solve_x installed");
  return sx_(z, u, rho);
}

Matrix MatrixProblem::solve_z(const Matrix& x, const Matrix& u, double rho) const {
  if (!sz_) throw std::logic_error("MatrixProblem: no solve_z installed");
  return sz_(x, u, rho);
}

namespace {

// circular forward difference along image rows (axis 0), as a matrix on
// column-major flattened h x w images
Matrix circular_difference(Index h, Index w, bool along_rows) {
  const Index n = h * w;
  Matrix g = Matrix::Zero(n, n);
  for (Index c = 0; c < w; ++c) {
    for (Index r = 0; r < h; ++r) {
      const Index i = r + c * h;
      const Index rn = along_rows ? (r + 1) % h : r;
      const Index cn = along_rows ? c : (c + 1) % w;
      g(i, rn + cn * h) += 1.0;
      g(i, i) -= 1.0;
    }
  }
  return g;
}

}  // namespace

std::shared_ptr<MatrixProblem> make_zero_f_tv_instance(Index h, Index w, double lambda,
                                                       std::uint64_t seed) {
  const Index n = h * w;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix s(n, 1);
  for (Index i = 0; i < n; ++i) s(i, 0) = gauss(rng);

  const Matrix g0 = circular_difference(h, w, true);
  const Matrix g1 = circular_difference(h, w, false);
  Matrix a(3 * n, n);
  a.topRows(n) = g0;
  a.middleRows(n, n) = g1;
  a.bottomRows(n) = Matrix::Identity(n, n);
  Matrix c = Matrix::Zero(3 * n, 1);
  c.bottomRows(n) = s;

  auto problem = std::make_shared<MatrixProblem>(a, Matrix(-Matrix::Identity(3 * n, 3 * n)), c);

  auto gram_llt = std::make_shared<Eigen::LLT<Matrix>>(Matrix(a.transpose() * a));
  problem->set_solvers(
      // f = 0: plain least squares min ||A x - (z + c - u)||^2
      [a, c, gram_llt](const Matrix& z, const Matrix& u, double) -> Matrix {
        return gram_llt->solve(a.transpose() * (z + c - u));
      },
      // prox of g(z) = ||z_s - s||_1 + lambda || sqrt(z0^2 + z1^2) ||_1
      [n, s, lambda, a, c](const Matrix& x, const Matrix& u, double rho) {
        const Matrix w = a * x - c + u;
        Matrix z(3 * n, 1);
        for (Index i = 0; i < n; ++i) {
          const double w0 = w(i, 0);
          const double w1 = w(n + i, 0);
          const double mag = std::hypot(w0, w1);
          const double shrink = mag > 0.0 ? std::max(1.0 - lambda / (rho * mag), 0.0) : 0.0;
          z(i, 0) = shrink * w0;
          z(n + i, 0) = shrink * w1;
        }
        z.bottomRows(n) =
            s + soft_threshold(w.bottomRows(n) - s, 1.0 / rho);
        return z;
      });
  problem->set_functionals(
      [](const Matrix&) { return 0.0; },
      [n, s, lambda](const Matrix& z) {
        double total = (z.bottomRows(n) - s).lpNorm<1>();
        for (Index i = 0; i < n; ++i) {
          total += lambda * std::hypot(z(i, 0), z(n + i, 0));
        }
        return total;
      });
  return problem;
}

IstaResult ista_bpdn(const Matrix& dictionary, const Matrix& sigma, double lambda,
                     int max_iter, double tol) {
  const Matrix gram = dictionary.transpose() * dictionary;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const double lipschitz = eig.eigenvalues().maxCoeff();
  const double step = 1.0 / lipschitz;

  Matrix x = Matrix::Zero(dictionary.cols(), sigma.cols());
  int iterations = 0;
  for (; iterations < max_iter; ++iterations) {
    const Matrix grad = dictionary.transpose() * (dictionary * x - sigma);
    const Matrix x_next = soft_threshold(x - step * grad, lambda * step);
    const double change = (x_next - x).norm() / std::max(x.norm(), 1e-30);
    x = x_next;
    if (change < tol) break;
  }
  const double fval = 0.5 * (dictionary * x - sigma).squaredNorm() + lambda * x.lpNorm<1>();
  return {std::move(x), iterations, fval};
}

Matrix circular_convolve(const Matrix& filter, const Matrix& map) {
  const Index h = map.rows();
  const Index w = map.cols();
  Matrix out = Matrix::Zero(h, w);
  for (Index i = 0; i < h; ++i) {
    for (Index j = 0; j < w; ++j) {
      double acc = 0.0;
      for (Index a = 0; a < filter.rows(); ++a) {
        for (Index b = 0; b < filter.cols(); ++b) {
          const Index ii = ((i - a) % h + h) % h;
          const Index jj = ((j - b) % w + w) % w;
          acc += filter(a, b) * map(ii, jj);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix block_circulant_dictionary(const std::vector<Matrix>& filters, Index h, Index w) {
  const Index hw = h * w;
  Matrix d(hw, hw * static_cast<Index>(filters.size()));
  for (std::size_t m = 0; m < filters.size(); ++m) {
    const Matrix& flt = filters[m];
    for (Index c0 = 0; c0 < w; ++c0) {
      for (Index r0 = 0; r0 < h; ++r0) {
        Matrix atom = Matrix::Zero(h, w);
        for (Index a = 0; a < flt.rows(); ++a) {
          for (Index b = 0; b < flt.cols(); ++b) {
            atom((r0 + a) % h, (c0 + b) % w) += flt(a, b);
          }
        }
        const Index col = static_cast<Index>(m) * hw + r0 + c0 * h;
        d.col(col) = Eigen::Map<const Vector>(atom.data(), hw);
      }
    }
  }
  return d;
}

}  // namespace admm::test
