#include "admm/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace admm {

namespace {

// FFTW's planner is not thread-safe; executing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_complex* as_fftw(const std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

Fft2::Fft2(Index rows, Index cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw ConfigError("fft: sizes must be positive");
  CMatrix a(rows, cols), b(rows, cols);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fwd_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                          as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols),
                          as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (fwd_ == nullptr || bwd_ == nullptr) throw NumericalError("fft: planning failed");
}

Fft2::~Fft2() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

CMatrix Fft2::forward(const CMatrix& in) const {
  if (in.rows() != rows_ || in.cols() != cols_) throw ConfigError("fft: size mismatch");
  CMatrix out(rows_, cols_);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

CMatrix Fft2::forward(const Matrix& in) const {
  const CMatrix tmp = in.cast<std::complex<double>>();
  return forward(tmp);
}

CMatrix Fft2::inverse(const CMatrix& in) const {
  if (in.rows() != rows_ || in.cols() != cols_) throw ConfigError("fft: size mismatch");
  CMatrix out(rows_, cols_);
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(in.data()), as_fftw(out.data()));
  out *= 1.0 / static_cast<double>(rows_ * cols_);
  return out;
}

Matrix Fft2::inverse_real(const CMatrix& in) const { return inverse(in).real(); }

RMatrix gradient_spectrum(Index rows, Index cols) {
  RMatrix g(rows, cols);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Index i = 0; i < rows; ++i) {
    const double row_term = 2.0 - 2.0 * std::cos(two_pi * static_cast<double>(i) /
                                                 static_cast<double>(rows));
    for (Index j = 0; j < cols; ++j) {
      const double col_term = 2.0 - 2.0 * std::cos(two_pi * static_cast<double>(j) /
                                                   static_cast<double>(cols));
      g(i, j) = row_term + col_term;
    }
  }
  return g;
}

}  // namespace admm
