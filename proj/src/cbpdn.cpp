#include "admm/cbpdn.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "admm/proximal.hpp"

namespace admm {

namespace {

using Complex = std::complex<double>;

}  // namespace

struct CbpdnProblem::Transforms {
  Index h, w, m_count, j_count;
  Fft2 fft;
  std::vector<Matrix> filters;
  std::vector<Matrix> images;
  std::vector<CMatrix> dhat;  // filter spectra, zero-padded to h x w
  std::vector<CMatrix> shat;  // image spectra
  RMatrix dd;                 // sum_m |dhat_m|^2

  Transforms(std::vector<Matrix> filters_in, std::vector<Matrix> images_in)
      : h(images_in.front().rows()),
        w(images_in.front().cols()),
        m_count(static_cast<Index>(filters_in.size())),
        j_count(static_cast<Index>(images_in.size())),
        fft(h, w),
        filters(std::move(filters_in)),
        images(std::move(images_in)) {
    dhat.reserve(static_cast<std::size_t>(m_count));
    dd = RMatrix::Zero(h, w);
    for (const Matrix& flt : filters) {
      Matrix padded = Matrix::Zero(h, w);
      padded.topLeftCorner(flt.rows(), flt.cols()) = flt;
      dhat.push_back(fft.forward(padded));
      dd += dhat.back().cwiseAbs2();
    }
    shat.reserve(static_cast<std::size_t>(j_count));
    for (const Matrix& img : images) shat.push_back(fft.forward(img));
  }
};

CbpdnProblem::CbpdnProblem(std::vector<Matrix> filters, std::vector<Matrix> images,
                           double lambda)
    : lambda_(lambda) {
  if (filters.empty()) throw ConfigError("cbpdn: no filters");
  if (images.empty()) throw ConfigError("cbpdn: no images");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("cbpdn: lambda must be positive");
  }
  const Index h = images.front().rows();
  const Index w = images.front().cols();
  for (const Matrix& img : images) {
    if (img.rows() != h || img.cols() != w) {
      throw ConfigError("cbpdn: images must share one size");
    }
    if (!img.allFinite()) throw NumericalError("cbpdn: non-finite image");
  }
  for (const Matrix& flt : filters) {
    if (flt.rows() < 1 || flt.cols() < 1 || flt.rows() > h || flt.cols() > w) {
      throw ConfigError("cbpdn: filter size must be within the image size");
    }
    if (!flt.allFinite()) throw NumericalError("cbpdn: non-finite filter");
  }
  sh_ = std::make_shared<const Transforms>(std::move(filters), std::move(images));
  c_zero_ = Matrix::Zero(sh_->h * sh_->w * sh_->m_count, sh_->j_count);
}

CbpdnProblem::CbpdnProblem(std::shared_ptr<const Transforms> shared, double lambda)
    : sh_(std::move(shared)), lambda_(lambda) {
  c_zero_ = Matrix::Zero(sh_->h * sh_->w * sh_->m_count, sh_->j_count);
}

CbpdnProblem CbpdnProblem::with_lambda(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("cbpdn: lambda must be positive");
  }
  return CbpdnProblem(sh_, lambda);
}

Index CbpdnProblem::image_rows() const { return sh_->h; }
Index CbpdnProblem::image_cols() const { return sh_->w; }
Index CbpdnProblem::filter_count() const { return sh_->m_count; }
Index CbpdnProblem::image_count() const { return sh_->j_count; }

Dims CbpdnProblem::dims() const {
  const Index n = sh_->h * sh_->w * sh_->m_count;
  return {n, n, n};
}

Index CbpdnProblem::cols() const { return sh_->j_count; }

Matrix CbpdnProblem::coefficient_map(const Matrix& x, Index m, Index j) const {
  const Index hw = sh_->h * sh_->w;
  if (m < 0 || m >= sh_->m_count || j < 0 || j >= x.cols() || x.rows() != hw * sh_->m_count) {
    throw ConfigError("cbpdn: coefficient map index out of range");
  }
  return Eigen::Map<const Matrix>(x.col(j).data() + m * hw, sh_->h, sh_->w);
}

Matrix CbpdnProblem::solve_x(const Matrix& z, const Matrix& u, double rho) const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ConfigError("cbpdn: rho must be positive");
  const Transforms& t = *sh_;
  const Index hw = t.h * t.w;
  if (z.rows() != hw * t.m_count || z.cols() != t.j_count || u.rows() != z.rows() ||
      u.cols() != z.cols()) {
    throw ConfigError("cbpdn: iterate dimensions do not match problem");
  }

  // Per bin the normal-equations block of the stacked spectral dictionary
  // is b b^H + rho I with b_m = conj(dhat_m); Sherman-Morrison gives
  // x = (v - b (b^H v) / (rho + |d|^2)) / rho.
  Matrix x(z.rows(), z.cols());
  const CMatrix denom = (t.dd.array() + rho).matrix().cast<Complex>();
  std::vector<CMatrix> vhat(static_cast<std::size_t>(t.m_count));
  for (Index j = 0; j < t.j_count; ++j) {
    CMatrix cross = CMatrix::Zero(t.h, t.w);  // b^H v = sum_m dhat_m v_m
    for (Index m = 0; m < t.m_count; ++m) {
      const Eigen::Map<const Matrix> zm(z.col(j).data() + m * hw, t.h, t.w);
      const Eigen::Map<const Matrix> um(u.col(j).data() + m * hw, t.h, t.w);
      const Matrix rhs = zm - um;
      CMatrix& v = vhat[static_cast<std::size_t>(m)];
      v = t.dhat[static_cast<std::size_t>(m)].conjugate().cwiseProduct(t.shat[static_cast<std::size_t>(j)]) +
          rho * t.fft.forward(rhs);
      cross += t.dhat[static_cast<std::size_t>(m)].cwiseProduct(v);
    }
    const CMatrix scale = cross.cwiseQuotient(denom);
    for (Index m = 0; m < t.m_count; ++m) {
      const CMatrix xhat =
          (vhat[static_cast<std::size_t>(m)] -
           t.dhat[static_cast<std::size_t>(m)].conjugate().cwiseProduct(scale)) /
          rho;
      Eigen::Map<Matrix>(x.col(j).data() + m * hw, t.h, t.w) = t.fft.inverse_real(xhat);
    }
  }
  return x;
}

Matrix CbpdnProblem::solve_z(const Matrix& x, const Matrix& u, double rho) const {
  if (!(rho > 0.0)) throw ConfigError("cbpdn: rho must be positive");
  return soft_threshold(x + u, lambda_ / rho);
}

double CbpdnProblem::g(const Matrix& z) const { return lambda_ * z.lpNorm<1>(); }

double CbpdnProblem::data_term(const Matrix& x) const {
  const Transforms& t = *sh_;
  const Index hw = t.h * t.w;
  double total = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    CMatrix acc = CMatrix::Zero(t.h, t.w);
    for (Index m = 0; m < t.m_count; ++m) {
      const Eigen::Map<const Matrix> xm(x.col(j).data() + m * hw, t.h, t.w);
      acc += t.dhat[static_cast<std::size_t>(m)].cwiseProduct(t.fft.forward(Matrix(xm)));
    }
    const Matrix recon = t.fft.inverse_real(acc);
    total += 0.5 * (recon - t.images[static_cast<std::size_t>(j)]).squaredNorm();
  }
  return total;
}

double CbpdnProblem::data_term_frequency(const Matrix& x) const {
  const Transforms& t = *sh_;
  const Index hw = t.h * t.w;
  double total = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    CMatrix acc = CMatrix::Zero(t.h, t.w);
    for (Index m = 0; m < t.m_count; ++m) {
      const Eigen::Map<const Matrix> xm(x.col(j).data() + m * hw, t.h, t.w);
      acc += t.dhat[static_cast<std::size_t>(m)].cwiseProduct(t.fft.forward(Matrix(xm)));
    }
    acc -= t.shat[static_cast<std::size_t>(j)];
    total += 0.5 * acc.squaredNorm() / static_cast<double>(hw);
  }
  return total;
}

std::pair<Matrix, Matrix> highpass_preprocess(const Matrix& image, double lambda_l) {
  if (lambda_l < 0.0 || !std::isfinite(lambda_l)) {
    throw ConfigError("highpass_preprocess: lambda_l must be non-negative");
  }
  const Fft2 fft(image.rows(), image.cols());
  const RMatrix grad = gradient_spectrum(image.rows(), image.cols());
  const CMatrix denom = (1.0 + lambda_l * grad.array()).matrix().cast<Complex>();
  const CMatrix lhat = fft.forward(image).cwiseQuotient(denom);
  Matrix lowpass = fft.inverse_real(lhat);
  Matrix highpass = image - lowpass;
  return {std::move(lowpass), std::move(highpass)};
}

std::vector<Matrix> random_unit_filters(std::uint64_t seed, Index count, Index side) {
  if (count < 1 || side < 1) throw ConfigError("random_unit_filters: sizes must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> filters;
  filters.reserve(static_cast<std::size_t>(count));
  for (Index m = 0; m < count; ++m) {
    Matrix flt(side, side);
    for (Index j = 0; j < side; ++j) {
      for (Index i = 0; i < side; ++i) flt(i, j) = gauss(rng);
    }
    flt /= flt.norm();
    filters.push_back(std::move(flt));
  }
  return filters;
}

}  // namespace admm
