#pragma once

#include "wten/baselines.hpp"
#include "wten/decomposition.hpp"
#include "wten/tensor.hpp"

#include <optional>
#include <vector>

namespace wten {

/// Linear motion blur of an n1 x n2 x p image with vertical/horizontal lengths bv, bh.
struct BlurSpec {
  Index bv = 1;
  Index bh = 1;
  Index n1 = 1;
  Index n2 = 1;
  Index p = 1;

  /// Throws ValueError unless 1 <= bv <= n1 and 1 <= bh <= n2 and p >= 1.
  void validate() const;
};

struct BlurVectors {
  std::vector<double> vertical;    ///< length n1
  std::vector<double> horizontal;  ///< length n2
};

/// c(i) = (b - i) / (3 b) for 0 <= i < b, 0 beyond.
BlurVectors blur_vectors(const BlurSpec& spec);

/// Symmetric Toeplitz matrix T(i, j) = c(|i - j|).
Matrix toeplitz(const std::vector<double>& c);

struct BlurOperators {
  Tensor3 vertical;    ///< n1 x n1 x p, every slice the vertical Toeplitz matrix
  Tensor3 horizontal;  ///< n2 x n2 x p, every slice the horizontal Toeplitz matrix
};

BlurOperators blur_operator(const BlurSpec& spec);

/// av * x * transpose(ah) under the w-product (w and spw) or the t-product (t,
/// with t_transpose; `levels` is ignored). Method m is not supported (ValueError).
Tensor3 blur(const Tensor3& x, const Tensor3& av, const Tensor3& ah, int levels,
             Method method = Method::w);

/// Least-squares deblur pinv(av) * b * pinv(transpose(ah)) under the chosen product:
/// w (all wavelet slices), spw (s_L and d_L only) or t (DFT). `levels` is
/// ignored for t. Method m is not supported (ValueError).
Tensor3 deblur(const Tensor3& b, const Tensor3& av, const Tensor3& ah, int levels, Method method,
               double tol = kDefaultPinvTol);

/// Maximum entry over both tensors. Falls back to the largest magnitude, then
/// to 1, so the result is always positive.
double max_pixel_value(const Tensor3& x1, const Tensor3& x2);

/// 10 log10(n1 n2 p MPP / |x1 - x2|_F^2), with MPP (not MPP^2) in the numerator.
/// Identical inputs give +infinity.
double psnr(const Tensor3& x1, const Tensor3& x2, double mpp);

/// Conventional PSNR with MPP^2 in the numerator.
double psnr_standard(const Tensor3& x1, const Tensor3& x2, double mpp);

/// SSIM of each frontal slice from global slice statistics (population
/// moments), c1 = (0.01 MPP)^2, c2 = (0.03 MPP)^2.
std::vector<double> ssim_per_band(const Tensor3& x1, const Tensor3& x2, double mpp);

/// Mean of ssim_per_band over the bands, accumulated in band order.
double ssim(const Tensor3& x1, const Tensor3& x2, double mpp);

struct QualityReport {
  double psnr = 0.0;      ///< MPP convention
  double psnr_std = 0.0;  ///< MPP^2 convention
  double ssim = 0.0;
  double mpp = 0.0;
  std::vector<double> band_ssim;
};

/// Both metrics; mpp defaults to max_pixel_value(x1, x2).
QualityReport quality(const Tensor3& x1, const Tensor3& x2, std::optional<double> mpp = {});

}  // namespace wten
