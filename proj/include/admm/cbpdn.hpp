#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "admm/fft.hpp"
#include "admm/problem.hpp"

namespace admm {

/// Convolutional sparse coding: min 1/2 || sum_m d_m (*) x_m - s ||^2
/// + lambda sum_m ||x_m||_1, with (*) circular convolution, in splitting
/// form with A = I, B = -I, c = 0.
///
/// Iterate columns hold one image's M coefficient maps stacked in order
/// (map m occupies rows [m HW, (m+1) HW), column-major within a map).
/// Several images form the columns of the iterate matrices and share the
/// dictionary; the data term decouples across them.
///
/// The x update is solved in the frequency domain: at every frequency bin
/// the M x M system (d d^H + rho I) xhat = dhat^* shat + rho what is
/// rank-one plus identity and is inverted in O(M) per bin.
class CbpdnProblem final : public Problem {
 public:
  /// Filters may be any size up to the image size; they are zero-padded.
  /// All images must share one size.
  CbpdnProblem(std::vector<Matrix> filters, std::vector<Matrix> images, double lambda);

  Matrix solve_x(const Matrix& z, const Matrix& u, double rho) const override;
  Matrix solve_z(const Matrix& x, const Matrix& u, double rho) const override;
  Matrix apply_A(const Matrix& x) const override { return x; }
  Matrix apply_At(const Matrix& w) const override { return w; }
  Matrix apply_B(const Matrix& z) const override { return -z; }
  const Matrix& c() const override { return c_zero_; }
  double f(const Matrix& x) const override { return data_term(x); }
  double g(const Matrix& z) const override;
  Dims dims() const override;
  Index cols() const override;

  double lambda() const { return lambda_; }
  Index image_rows() const;
  Index image_cols() const;
  Index filter_count() const;
  Index image_count() const;

  /// Coefficient map m of image j, unflattened from an iterate.
  Matrix coefficient_map(const Matrix& x, Index m, Index j) const;

  /// 1/2 sum_j || sum_m d_m (*) x_m - s_j ||^2 evaluated in the spatial
  /// domain after reconstructing.
  double data_term(const Matrix& x) const;

  /// The same quantity evaluated entirely in the frequency domain.
  double data_term_frequency(const Matrix& x) const;

  /// Same data with a different sparsity weight; shares all transforms.
  CbpdnProblem with_lambda(double lambda) const;

 private:
  struct Transforms;
  CbpdnProblem(std::shared_ptr<const Transforms> shared, double lambda);

  std::shared_ptr<const Transforms> sh_;
  double lambda_;
  Matrix c_zero_;
};

/// Splits an image into (lowpass, highpass). The lowpass part solves
/// min_l 1/2 ||l - image||^2 + lambda_l ||grad l||^2 per frequency bin
/// under circular boundary conditions; highpass = image - lowpass.
std::pair<Matrix, Matrix> highpass_preprocess(const Matrix& image, double lambda_l);

/// M random filters of size side x side with unit Frobenius norm,
/// deterministic in `seed`.
std::vector<Matrix> random_unit_filters(std::uint64_t seed, Index count, Index side);

}  // namespace admm
