#pragma once

#include "wten/tensor.hpp"

#include <vector>

namespace wten {

enum class BlockKind { smooth, detail };

/// Names one frontal slice of one coefficient block of a pyramid.
struct BlockId {
  BlockKind kind;
  int level;    ///< j for d_j; L for the smooth block s_L
  Index slice;  ///< 0-based slice inside the block

  friend bool operator==(const BlockId&, const BlockId&) = default;
};

/// Multilevel lazy-wavelet representation of a tensor along mode 3:
/// the coarse smooth block s_L plus detail blocks d_1 .. d_L.
///
/// details[j - 1] holds d_j with p / 2^j slices; smooth holds p / 2^L slices.
struct WaveletPyramid {
  Tensor3 smooth;
  std::vector<Tensor3> details;

  /// Zero coefficients for an n1 x n2 x p tensor at L levels.
  static WaveletPyramid zeros(Index n1, Index n2, Index p, int levels);

  int levels() const noexcept { return static_cast<int>(details.size()); }
  Index rows() const noexcept { return smooth.rows(); }
  Index cols() const noexcept { return smooth.cols(); }
  /// p, the slice count of the spatial tensor.
  Index signal_length() const noexcept { return smooth.slices() << details.size(); }
  /// m = p / 2^L.
  Index coarse_slices() const noexcept { return smooth.slices(); }

  Tensor3& detail(int level) { return details.at(static_cast<std::size_t>(level - 1)); }
  const Tensor3& detail(int level) const {
    return details.at(static_cast<std::size_t>(level - 1));
  }
  Tensor3& block(const BlockId& id) {
    return id.kind == BlockKind::smooth ? smooth : detail(id.level);
  }
  const Tensor3& block(const BlockId& id) const {
    return id.kind == BlockKind::smooth ? smooth : detail(id.level);
  }

  /// Every (block, slice) pair in a fixed order: d_1, d_2, ..., d_L, then s_L.
  std::vector<BlockId> block_ids() const;
  /// Only the coarsest pair s_L and d_L.
  std::vector<BlockId> coarse_block_ids() const;

  /// Throws ShapeError if slice counts or slice shapes are inconsistent.
  void validate() const;
};

/// Largest L with 2^L dividing p. Requires p >= 1.
int max_levels(Index p);

/// Throws LevelError unless 1 <= levels and 2^levels divides p.
void require_levels(Index p, int levels);

/// Forward lazy wavelet transform along mode 3 (predict = I, update = I/2):
///   d_j[k] = s_{j-1}[2k-1] - s_{j-1}[2k],  s_j[k] = s_{j-1}[2k] + d_j[k] / 2
/// with 1-based slice positions, i.e. odd positions 1, 3, 5, ... feed the
/// first operand.
WaveletPyramid forward_w(const Tensor3& t, int levels);

/// Exact inverse of forward_w.
Tensor3 inverse_w(const WaveletPyramid& pyr);

/// The coarsest pair s_L, d_L of forward_w, without the finer details.
struct CoarseBlocks {
  Tensor3 smooth;
  Tensor3 detail;
  int levels = 0;
};

/// Same s_L and d_L as forward_w (bitwise), storing no finer detail.
CoarseBlocks forward_w_coarse(const Tensor3& t, int levels);

/// inverse_w of the pyramid (s_L, d_L) with zero d_1 .. d_{L-1} (bitwise).
Tensor3 inverse_w_coarse(const CoarseBlocks& blocks);

/// Blockwise slice transpose.
WaveletPyramid transpose(const WaveletPyramid& pyr);

double frobenius_norm(const WaveletPyramid& pyr);
/// Square root of the summed squared blockwise differences.
double distance(const WaveletPyramid& a, const WaveletPyramid& b);

/// Energy in d_1 .. d_{L-1} over total energy (0 for L = 1 or zero input).
double fine_detail_energy_ratio(const WaveletPyramid& pyr);

}  // namespace wten
