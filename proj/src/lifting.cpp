#include "wten/lifting.hpp"

#include "wten/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wten {

namespace {

// Below this many scalars per level, threading costs more than it saves.
constexpr Index kParallelGrain = 1 << 14;

// One analysis step: `pairs` slice pairs of `n` scalars each.
void split(const double* src, Index pairs, Index n, double* detail, double* smooth) {
#pragma omp parallel for collapse(2) schedule(static) if (pairs * n >= kParallelGrain)
  for (Index k = 0; k < pairs; ++k) {
    for (Index e = 0; e < n; ++e) {
      const double odd = src[(2 * k) * n + e];
      const double even = src[(2 * k + 1) * n + e];
      const double d = odd - even;
      detail[k * n + e] = d;
      smooth[k * n + e] = even + d * 0.5;
    }
  }
}

// split() without storing the detail.
void split_smooth(const double* src, Index pairs, Index n, double* smooth) {
#pragma omp parallel for collapse(2) schedule(static) if (pairs * n >= kParallelGrain)
  for (Index k = 0; k < pairs; ++k) {
    for (Index e = 0; e < n; ++e) {
      const double odd = src[(2 * k) * n + e];
      const double even = src[(2 * k + 1) * n + e];
      const double d = odd - even;
      smooth[k * n + e] = even + d * 0.5;
    }
  }
}

// One synthesis step, the exact mirror of split().
void merge(const double* smooth, const double* detail, Index pairs, Index n, double* dst) {
#pragma omp parallel for collapse(2) schedule(static) if (pairs * n >= kParallelGrain)
  for (Index k = 0; k < pairs; ++k) {
    for (Index e = 0; e < n; ++e) {
      const double d = detail[k * n + e];
      const double even = smooth[k * n + e] - d * 0.5;
      dst[(2 * k + 1) * n + e] = even;
      dst[(2 * k) * n + e] = d + even;
    }
  }
}

double squared_norm(const Tensor3& t) {
  double s = 0.0;
  for (double x : t.data()) s += x * x;
  return s;
}

}  // namespace

WaveletPyramid WaveletPyramid::zeros(Index n1, Index n2, Index p, int levels) {
  require_levels(p, levels);
  WaveletPyramid pyr;
  for (int j = 1; j <= levels; ++j) pyr.details.emplace_back(n1, n2, p >> j);
  pyr.smooth = Tensor3(n1, n2, p >> levels);
  return pyr;
}

std::vector<BlockId> WaveletPyramid::block_ids() const {
  std::vector<BlockId> ids;
  ids.reserve(static_cast<std::size_t>(signal_length()));
  for (int j = 1; j <= levels(); ++j) {
    for (Index k = 0; k < detail(j).slices(); ++k) ids.push_back({BlockKind::detail, j, k});
  }
  for (Index k = 0; k < smooth.slices(); ++k) ids.push_back({BlockKind::smooth, levels(), k});
  return ids;
}

std::vector<BlockId> WaveletPyramid::coarse_block_ids() const {
  std::vector<BlockId> ids;
  const int top = levels();
  for (Index k = 0; k < detail(top).slices(); ++k) ids.push_back({BlockKind::detail, top, k});
  for (Index k = 0; k < smooth.slices(); ++k) ids.push_back({BlockKind::smooth, top, k});
  return ids;
}

void WaveletPyramid::validate() const {
  if (details.empty()) throw ShapeError("wavelet pyramid has no detail levels");
  if (smooth.empty()) throw ShapeError("wavelet pyramid has no smooth block");
  const Index m = smooth.slices();
  for (int j = levels(); j >= 1; --j) {
    const Tensor3& d = detail(j);
    const Index expected = m << (levels() - j);
    if (d.slices() != expected) {
      throw ShapeError("detail level " + std::to_string(j) + " has " +
                       std::to_string(d.slices()) + " slices, expected " +
                       std::to_string(expected));
    }
    if (d.rows() != smooth.rows() || d.cols() != smooth.cols()) {
      throw ShapeError("detail level " + std::to_string(j) + " slice shape differs from s_L");
    }
  }
}

int max_levels(Index p) {
  if (p < 1) throw LevelError("max_levels: p must be positive");
  int levels = 0;
  while (p % 2 == 0) {
    p /= 2;
    ++levels;
  }
  return levels;
}

void require_levels(Index p, int levels) {
  if (levels < 1) throw LevelError("wavelet levels must be >= 1, got " + std::to_string(levels));
  if (levels > max_levels(p)) {
    throw LevelError("2^" + std::to_string(levels) + " does not divide p = " + std::to_string(p));
  }
}

WaveletPyramid forward_w(const Tensor3& t, int levels) {
  if (t.empty()) throw ShapeError("forward_w: empty tensor");
  require_levels(t.slices(), levels);
  const Index n = t.slice_size();
  WaveletPyramid pyr;
  pyr.details.reserve(static_cast<std::size_t>(levels));

  Tensor3 current;
  for (int j = 1; j <= levels; ++j) {
    const Tensor3& src = j == 1 ? t : current;
    const Index pairs = src.slices() / 2;
    Tensor3 detail(t.rows(), t.cols(), pairs);
    Tensor3 smooth(t.rows(), t.cols(), pairs);
    split(src.slice_ptr(0), pairs, n, detail.slice_ptr(0), smooth.slice_ptr(0));
    pyr.details.push_back(std::move(detail));
    current = std::move(smooth);
  }
  pyr.smooth = std::move(current);
  return pyr;
}

Tensor3 inverse_w(const WaveletPyramid& pyr) {
  pyr.validate();
  const Index n = pyr.smooth.slice_size();
  Tensor3 current = pyr.smooth;
  for (int j = pyr.levels(); j >= 1; --j) {
    const Tensor3& d = pyr.detail(j);
    Tensor3 finer(pyr.rows(), pyr.cols(), 2 * d.slices());
    merge(current.slice_ptr(0), d.slice_ptr(0), d.slices(), n, finer.slice_ptr(0));
    current = std::move(finer);
  }
  return current;
}

CoarseBlocks forward_w_coarse(const Tensor3& t, int levels) {
  if (t.empty()) throw ShapeError("forward_w_coarse: empty tensor");
  require_levels(t.slices(), levels);
  const Index n = t.slice_size();
  Tensor3 current;
  for (int j = 1; j < levels; ++j) {
    const Tensor3& src = j == 1 ? t : current;
    Tensor3 smooth(t.rows(), t.cols(), src.slices() / 2);
    split_smooth(src.slice_ptr(0), smooth.slices(), n, smooth.slice_ptr(0));
    current = std::move(smooth);
  }
  const Tensor3& src = levels == 1 ? t : current;
  const Index pairs = src.slices() / 2;
  CoarseBlocks out{Tensor3(t.rows(), t.cols(), pairs), Tensor3(t.rows(), t.cols(), pairs), levels};
  split(src.slice_ptr(0), pairs, n, out.detail.slice_ptr(0), out.smooth.slice_ptr(0));
  return out;
}

Tensor3 inverse_w_coarse(const CoarseBlocks& blocks) {
  const Tensor3& s = blocks.smooth;
  const Tensor3& d = blocks.detail;
  if (blocks.levels < 1) throw LevelError("inverse_w_coarse: levels must be >= 1");
  if (!s.same_shape(d) || s.empty()) throw ShapeError("inverse_w_coarse: s_L and d_L differ in shape");
  const Index n = s.slice_size();
  Tensor3 top(s.rows(), s.cols(), 2 * s.slices());
  merge(s.slice_ptr(0), d.slice_ptr(0), s.slices(), n, top.slice_ptr(0));
  const Index repeat = Index{1} << (blocks.levels - 1);
  if (repeat == 1) return top;
  Tensor3 out(s.rows(), s.cols(), top.slices() * repeat);
  const Index total = out.slices();
#pragma omp parallel for schedule(static) if (total * n >= kParallelGrain)
  for (Index k = 0; k < total; ++k) {
    std::copy_n(top.slice_ptr(k / repeat), n, out.slice_ptr(k));
  }
  return out;
}

WaveletPyramid transpose(const WaveletPyramid& pyr) {
  WaveletPyramid r;
  r.smooth = transpose(pyr.smooth);
  for (const Tensor3& d : pyr.details) r.details.push_back(transpose(d));
  return r;
}

double frobenius_norm(const WaveletPyramid& pyr) {
  double s = squared_norm(pyr.smooth);
  for (const Tensor3& d : pyr.details) s += squared_norm(d);
  return std::sqrt(s);
}

double distance(const WaveletPyramid& a, const WaveletPyramid& b) {
  if (a.levels() != b.levels()) throw ShapeError("distance: pyramids differ in level count");
  double s = std::pow(wten::distance(a.smooth, b.smooth), 2);
  for (int j = 1; j <= a.levels(); ++j) s += std::pow(wten::distance(a.detail(j), b.detail(j)), 2);
  return std::sqrt(s);
}

double fine_detail_energy_ratio(const WaveletPyramid& pyr) {
  double fine = 0.0;
  for (int j = 1; j < pyr.levels(); ++j) fine += squared_norm(pyr.detail(j));
  const double total = fine + squared_norm(pyr.smooth) + squared_norm(pyr.detail(pyr.levels()));
  return total > 0.0 ? fine / total : 0.0;
}

}  // namespace wten
