#include "wten/decomposition.hpp"

#include "block_parallel.hpp"
#include "wten/error.hpp"
#include "wten/log.hpp"
#include "wten/walgebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wten {

namespace {

void require_rank(const Tensor3& a, Index rank) {
  const Index q = std::min(a.rows(), a.cols());
  if (rank < 1 || rank > q) {
    throw RankError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(q) + "]");
  }
}

struct Truncation {
  WaveletPyramid u, s, v, recon;
  std::vector<SliceSpectrum> spectrum;
};

// Rank-r SVD truncation of the listed slices; other slices stay zero.
Truncation truncate_slices(const WaveletPyramid& pyr, Index rank, const std::vector<BlockId>& ids,
                           bool keep_factors) {
  const Index n1 = pyr.rows();
  const Index n2 = pyr.cols();
  const Index p = pyr.signal_length();
  const int levels = pyr.levels();
  Truncation t;
  t.recon = WaveletPyramid::zeros(n1, n2, p, levels);
  if (keep_factors) {
    t.u = WaveletPyramid::zeros(n1, rank, p, levels);
    t.s = WaveletPyramid::zeros(rank, rank, p, levels);
    t.v = WaveletPyramid::zeros(n2, rank, p, levels);
  }
  t.spectrum.resize(ids.size());

  detail::parallel_for(static_cast<Index>(ids.size()), [&](Index i) {
    const BlockId& id = ids[static_cast<std::size_t>(i)];
    const Index k = id.slice;
    SvdResult svd = matrix_svd(pyr.block(id).slice(k));
    const Eigen::Map<const Eigen::VectorXd> sigma(svd.sigma.data(), rank);
    const Matrix ur = svd.u.leftCols(rank);
    const Matrix vr = svd.v.leftCols(rank);
    t.recon.block(id).slice(k) = ur * sigma.asDiagonal() * vr.transpose();
    if (keep_factors) {
      t.u.block(id).slice(k) = ur;
      t.s.block(id).slice(k) = sigma.asDiagonal();
      t.v.block(id).slice(k) = vr;
    }
    t.spectrum[static_cast<std::size_t>(i)] = SliceSpectrum{id, std::move(svd.sigma)};
  });
  return t;
}

WaveletPyramid pinv_slices(const WaveletPyramid& pyr, const std::vector<BlockId>& ids, double tol) {
  WaveletPyramid r = WaveletPyramid::zeros(pyr.cols(), pyr.rows(), pyr.signal_length(), pyr.levels());
  detail::parallel_for(static_cast<Index>(ids.size()), [&](Index i) {
    const BlockId& id = ids[static_cast<std::size_t>(i)];
    r.block(id).slice(id.slice) = matrix_pinv(pyr.block(id).slice(id.slice), tol);
  });
  return r;
}

}  // namespace

WSvd w_svd(const Tensor3& a, Index rank, int levels) {
  require_rank(a, rank);
  const WaveletPyramid pyr = forward_w(a, levels);
  Truncation t = truncate_slices(pyr, rank, pyr.block_ids(), true);
  WSvd out;
  out.reconstruction = inverse_w(t.recon);
  out.factors.u = inverse_w(t.u);
  out.factors.s = inverse_w(t.s);
  out.factors.v = inverse_w(t.v);
  out.factors.rank = rank;
  out.factors.levels = levels;
  out.factors.spectrum = std::move(t.spectrum);
  return out;
}

TruncationBound truncation_bound(const SvdFactors& factors, Index rank) {
  if (rank < 0) throw RankError("truncation_bound: negative rank");
  TruncationBound tb;
  double sum = 0.0;
  for (const SliceSpectrum& s : factors.spectrum) {
    for (std::size_t i = static_cast<std::size_t>(rank); i < s.sigma.size(); ++i) {
      tb.discarded.push_back({s.block, static_cast<Index>(i), s.sigma[i]});
      sum += s.sigma[i] * s.sigma[i];
    }
  }
  tb.bound = std::sqrt(sum);
  return tb;
}

Tensor3 sp_w_svd(const Tensor3& a, Index rank, int levels) {
  require_rank(a, rank);
  CoarseBlocks blocks = forward_w_coarse(a, levels);
  const Index m = blocks.smooth.slices();
  detail::parallel_for(2 * m, [&](Index i) {
    Tensor3& block = i < m ? blocks.detail : blocks.smooth;
    auto slice = block.slice(i % m);
    const SvdResult svd = matrix_svd(slice);
    const Eigen::Map<const Eigen::VectorXd> sigma(svd.sigma.data(), rank);
    slice = svd.u.leftCols(rank) * sigma.asDiagonal() * svd.v.leftCols(rank).transpose();
  });
  return inverse_w_coarse(blocks);
}

WaveletPyramid pinv_pyramid(const WaveletPyramid& pyr, double tol) {
  pyr.validate();
  return pinv_slices(pyr, pyr.block_ids(), tol);
}

WaveletPyramid coarse_pinv_pyramid(const WaveletPyramid& pyr, double tol) {
  pyr.validate();
  return pinv_slices(pyr, pyr.coarse_block_ids(), tol);
}

Tensor3 pinv_w(const Tensor3& a, int levels, double tol) {
  return inverse_w(pinv_pyramid(forward_w(a, levels), tol));
}

Tensor3 pinv_w_from_factors(const SvdFactors& factors, double tol) {
  const Index q = std::min(factors.u.rows(), factors.v.rows());
  if (factors.rank != q) {
    throw RankError("pinv_w_from_factors needs full-rank factors (rank " + std::to_string(q) +
                    "), got rank " + std::to_string(factors.rank));
  }
  const Index p = factors.s.slices();
  WaveletPyramid sdag = WaveletPyramid::zeros(q, q, p, factors.levels);
  for (const SliceSpectrum& spec : factors.spectrum) {
    SliceMap out = sdag.block(spec.block).slice(spec.block.slice);
    const double cutoff = spec.sigma.empty() ? 0.0 : tol * spec.sigma.front();
    for (Index i = 0; i < q; ++i) {
      const double s = spec.sigma[static_cast<std::size_t>(i)];
      out(i, i) = (s > cutoff && s > 0.0) ? 1.0 / s : 0.0;
    }
  }
  const Tensor3 vs = w_product(factors.v, inverse_w(sdag), factors.levels);
  return w_product(vs, transpose(factors.u), factors.levels);
}

Tensor3 sp_pinv_w(const Tensor3& a, int levels, double tol) {
  const WaveletPyramid pyr = forward_w(a, levels);
  const double ratio = fine_detail_energy_ratio(pyr);
  if (ratio > 0.01) {
    warn("sp_pinv_w: finer detail levels hold " + std::to_string(100.0 * ratio) +
         "% of the coefficient energy; the sparse pseudo-inverse drops them and will not "
         "satisfy the Penrose conditions");
  }
  return inverse_w(coarse_pinv_pyramid(pyr, tol));
}

}  // namespace wten
