#include "wten/imaging.hpp"

#include "block_parallel.hpp"
#include "fft.hpp"
#include "wten/error.hpp"
#include "wten/walgebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wten {

void BlurSpec::validate() const {
  if (p < 1) throw ValueError("blur spec: p must be positive");
  if (bv < 1 || bv > n1) {
    throw ValueError("blur spec: vertical length " + std::to_string(bv) + " outside [1, " +
                     std::to_string(n1) + "]");
  }
  if (bh < 1 || bh > n2) {
    throw ValueError("blur spec: horizontal length " + std::to_string(bh) + " outside [1, " +
                     std::to_string(n2) + "]");
  }
}

namespace {

std::vector<double> taps(Index b, Index n) {
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < std::min(b, n); ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<double>(b - i) / static_cast<double>(3 * b);
  }
  return c;
}

void require_operators(const Tensor3& x, const Tensor3& av, const Tensor3& ah) {
  if (av.rows() != av.cols() || ah.rows() != ah.cols()) {
    throw ShapeError("blur operators must have square slices");
  }
  if (av.cols() != x.rows() || ah.cols() != x.cols() || av.slices() != x.slices() ||
      ah.slices() != x.slices()) {
    throw ShapeError("blur operators do not match the image shape");
  }
}

Tensor3 deblur_t(const Tensor3& b, const Tensor3& av, const Tensor3& ah, double tol) {
  using detail::HalfSpectrum;
  const HalfSpectrum fv = detail::mode3_rfft(av);
  const HalfSpectrum fh = detail::mode3_rfft(t_transpose(ah));
  const HalfSpectrum fb = detail::mode3_rfft(b);
  HalfSpectrum fx(b.rows(), b.cols(), b.slices());

  auto pinv = [tol](const auto& m) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    const double cutoff = s.size() > 0 ? tol * s(0) : 0.0;
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
    }
    return Eigen::MatrixXcd(svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint());
  };

  detail::parallel_for(fx.bins(), [&](Index k) {
    const Eigen::MatrixXcd left = pinv(fv.bin(k));
    const Eigen::MatrixXcd right = pinv(fh.bin(k));
    fx.bin(k).noalias() = left * fb.bin(k) * right;
  });
  return detail::mode3_irfft(fx);
}

void require_mpp(double mpp) {
  if (!(mpp > 0.0) || !std::isfinite(mpp)) {
    throw ValueError("maximum pixel value must be positive and finite");
  }
}

}  // namespace

BlurVectors blur_vectors(const BlurSpec& spec) {
  spec.validate();
  return {taps(spec.bv, spec.n1), taps(spec.bh, spec.n2)};
}

Matrix toeplitz(const std::vector<double>& c) {
  const Index n = static_cast<Index>(c.size());
  Matrix t(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) t(i, j) = c[static_cast<std::size_t>(std::abs(i - j))];
  }
  return t;
}

BlurOperators blur_operator(const BlurSpec& spec) {
  const BlurVectors v = blur_vectors(spec);
  return {Tensor3::repeat_slice(toeplitz(v.vertical), spec.p),
          Tensor3::repeat_slice(toeplitz(v.horizontal), spec.p)};
}

Tensor3 blur(const Tensor3& x, const Tensor3& av, const Tensor3& ah, int levels, Method method) {
  require_operators(x, av, ah);
  if (method == Method::t) return t_product(t_product(av, x), t_transpose(ah));
  if (method == Method::m) throw ValueError("blur supports methods w, spw and t");
  const WaveletPyramid left = forward_w(av, levels);
  const WaveletPyramid right = forward_w(transpose(ah), levels);
  return inverse_w(face_product(face_product(left, forward_w(x, levels)), right));
}

Tensor3 deblur(const Tensor3& b, const Tensor3& av, const Tensor3& ah, int levels, Method method,
               double tol) {
  require_operators(b, av, ah);
  switch (method) {
    case Method::w: {
      const WaveletPyramid left = pinv_pyramid(forward_w(av, levels), tol);
      const WaveletPyramid right = pinv_pyramid(forward_w(transpose(ah), levels), tol);
      return inverse_w(face_product(face_product(left, forward_w(b, levels)), right));
    }
    case Method::spw: {
      const WaveletPyramid left = coarse_pinv_pyramid(forward_w(av, levels), tol);
      const WaveletPyramid right = coarse_pinv_pyramid(forward_w(transpose(ah), levels), tol);
      return inverse_w(
          coarse_face_product(coarse_face_product(left, forward_w(b, levels)), right));
    }
    case Method::t:
      return deblur_t(b, av, ah, tol);
    case Method::m:
      break;
  }
  throw ValueError("deblur supports methods w, spw and t");
}

double max_pixel_value(const Tensor3& x1, const Tensor3& x2) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : x1.data()) mx = std::max(mx, v);
  for (double v : x2.data()) mx = std::max(mx, v);
  if (mx > 0.0) return mx;
  const double mag = std::max(max_abs(x1), max_abs(x2));
  return mag > 0.0 ? mag : 1.0;
}

double psnr(const Tensor3& x1, const Tensor3& x2, double mpp) {
  require_mpp(mpp);
  const double err = std::pow(distance(x1, x2), 2);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(static_cast<double>(x1.size()) * mpp / err);
}

double psnr_standard(const Tensor3& x1, const Tensor3& x2, double mpp) {
  require_mpp(mpp);
  const double err = std::pow(distance(x1, x2), 2);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(static_cast<double>(x1.size()) * mpp * mpp / err);
}

std::vector<double> ssim_per_band(const Tensor3& x1, const Tensor3& x2, double mpp) {
  require_same_shape(x1, x2, "ssim");
  require_mpp(mpp);
  const double c1 = (0.01 * mpp) * (0.01 * mpp);
  const double c2 = (0.03 * mpp) * (0.03 * mpp);
  const Index n = x1.slice_size();
  std::vector<double> out(static_cast<std::size_t>(x1.slices()));

#pragma omp parallel for schedule(static)
  for (Index k = 0; k < x1.slices(); ++k) {
    const double* a = x1.slice_ptr(k);
    const double* b = x2.slice_ptr(k);
    double ma = 0.0, mb = 0.0;
    for (Index e = 0; e < n; ++e) {
      ma += a[e];
      mb += b[e];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double va = 0.0, vb = 0.0, cov = 0.0;
    for (Index e = 0; e < n; ++e) {
      const double da = a[e] - ma;
      const double db = b[e] - mb;
      va += da * da;
      vb += db * db;
      cov += da * db;
    }
    va /= static_cast<double>(n);
    vb /= static_cast<double>(n);
    cov /= static_cast<double>(n);
    out[static_cast<std::size_t>(k)] = ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                                       ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return out;
}

double ssim(const Tensor3& x1, const Tensor3& x2, double mpp) {
  const std::vector<double> bands = ssim_per_band(x1, x2, mpp);
  double sum = 0.0;
  for (double s : bands) sum += s;
  return sum / static_cast<double>(bands.size());
}

QualityReport quality(const Tensor3& x1, const Tensor3& x2, std::optional<double> mpp) {
  require_same_shape(x1, x2, "quality");
  QualityReport q;
  q.mpp = mpp.value_or(max_pixel_value(x1, x2));
  q.psnr = psnr(x1, x2, q.mpp);
  q.psnr_std = psnr_standard(x1, x2, q.mpp);
  q.band_ssim = ssim_per_band(x1, x2, q.mpp);
  double sum = 0.0;
  for (double s : q.band_ssim) sum += s;
  q.ssim = sum / static_cast<double>(q.band_ssim.size());
  return q;
}

}  // namespace wten
