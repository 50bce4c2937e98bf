#pragma once

#include <complex>

#include "admm/types.hpp"

namespace admm {

/// Row-major complex matrix, the in-memory layout FFTW expects.
using CMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Two-dimensional complex DFT of a fixed size, wrapping FFTW plans.
/// Planning is serialized internally; executing one plan from several
/// threads on distinct buffers is safe.
class Fft2 {
 public:
  Fft2(Index rows, Index cols);
  ~Fft2();
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  CMatrix forward(const Matrix& in) const;
  CMatrix forward(const CMatrix& in) const;
  CMatrix inverse(const CMatrix& in) const;       ///< normalized by 1/(rows*cols)
  Matrix inverse_real(const CMatrix& in) const;   ///< real part of inverse()

 private:
  Index rows_, cols_;
  void* fwd_;  // fftw_plan
  void* bwd_;
};

/// Squared magnitude spectrum of the circular forward-difference gradient,
/// |g_row(k)|^2 + |g_col(l)|^2 = (2 - 2 cos(2 pi k / rows)) + (2 - 2 cos(2 pi l / cols)).
RMatrix gradient_spectrum(Index rows, Index cols);

}  // namespace admm
