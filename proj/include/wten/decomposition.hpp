#pragma once

#include "wten/lifting.hpp"
#include "wten/tensor.hpp"

#include <vector>

namespace wten {

/// Relative singular-value cutoff used by the pseudo-inverses unless overridden.
inline constexpr double kDefaultPinvTol = 1e-12;

/// All singular values of one wavelet-domain slice, descending.
struct SliceSpectrum {
  BlockId block;
  std::vector<double> sigma;
};

/// Rank-r factors of a w-svd, stored in the spatial domain so that
/// a ~= u *_w s *_w transpose(v).
struct SvdFactors {
  Tensor3 u;  ///< n1 x r x p
  Tensor3 s;  ///< r x r x p
  Tensor3 v;  ///< n2 x r x p
  Index rank = 0;
  int levels = 0;
  /// Full spectrum of every wavelet-domain slice in block order (d_1 .. d_L, s_L).
  std::vector<SliceSpectrum> spectrum;
};

struct WSvd {
  SvdFactors factors;
  Tensor3 reconstruction;
};

struct DiscardedValue {
  BlockId block;
  Index index;  ///< 0-based position in the slice spectrum
  double sigma;
};

struct TruncationBound {
  double bound = 0.0;
  std::vector<DiscardedValue> discarded;
};

/// Truncated SVD of every wavelet-domain slice. Requires 1 <= rank <= min(n1, n2)
/// (RankError) and 2^levels | p (LevelError).
WSvd w_svd(const Tensor3& a, Index rank, int levels);

/// sqrt of the summed squares of every singular value past `rank`, over all
/// slices of all blocks. Uses the spectrum cached in `factors`.
TruncationBound truncation_bound(const SvdFactors& factors, Index rank);

/// Rank-r truncation of the s_L and d_L slices only; finer detail blocks are
/// zeroed before the inverse transform.
Tensor3 sp_w_svd(const Tensor3& a, Index rank, int levels);

/// Per-slice pseudo-inverse of a pyramid; the result has transposed slice shape.
WaveletPyramid pinv_pyramid(const WaveletPyramid& pyr, double tol = kDefaultPinvTol);
/// As pinv_pyramid over s_L and d_L only; finer detail blocks are zero.
WaveletPyramid coarse_pinv_pyramid(const WaveletPyramid& pyr, double tol = kDefaultPinvTol);

/// Moore-Penrose inverse under the w-product: every wavelet-domain slice is
/// pseudo-inverted through its SVD, dropping singular values <= tol * sigma_max.
Tensor3 pinv_w(const Tensor3& a, int levels, double tol = kDefaultPinvTol);

/// The same inverse assembled as v *_w pinv(s) *_w transpose(u) from full-rank
/// factors (rank == min(n1, n2)). Throws RankError for truncated factors.
Tensor3 pinv_w_from_factors(const SvdFactors& factors, double tol = kDefaultPinvTol);

/// Pseudo-inverts only s_L and d_L; finer detail blocks of the result are zero.
/// This equals pinv_w only when the input's finer details vanish; a warning is
/// emitted when they carry more than 1% of the coefficient energy.
Tensor3 sp_pinv_w(const Tensor3& a, int levels, double tol = kDefaultPinvTol);

}  // namespace wten
