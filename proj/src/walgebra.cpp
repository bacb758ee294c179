#include "wten/walgebra.hpp"

#include "block_parallel.hpp"
#include "wten/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wten {

namespace {

void require_plan(const WaveletPyramid& a, const WaveletPyramid& b) {
  a.validate();
  b.validate();
  if (a.levels() != b.levels()) {
    throw ShapeError("face_product: level counts differ (" + std::to_string(a.levels()) + " vs " +
                     std::to_string(b.levels()) + ")");
  }
  if (a.signal_length() != b.signal_length()) {
    throw ShapeError("face_product: slice counts differ");
  }
  if (a.cols() != b.rows()) {
    throw ShapeError("face_product: inner dimensions differ (" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + ")");
  }
}

WaveletPyramid multiply_blocks(const WaveletPyramid& a, const WaveletPyramid& b,
                               const std::vector<BlockId>& ids) {
  WaveletPyramid c = WaveletPyramid::zeros(a.rows(), b.cols(), a.signal_length(), a.levels());
  detail::parallel_for(static_cast<Index>(ids.size()), [&](Index i) {
    const BlockId& id = ids[static_cast<std::size_t>(i)];
    const Index k = id.slice;
    SliceMap out(c.block(id).slice_ptr(k), a.rows(), b.cols());
    out.noalias() = a.block(id).slice(k) * b.block(id).slice(k);
  });
  return c;
}

}  // namespace

WaveletPyramid face_product(const WaveletPyramid& a, const WaveletPyramid& b) {
  require_plan(a, b);
  return multiply_blocks(a, b, a.block_ids());
}

WaveletPyramid coarse_face_product(const WaveletPyramid& a, const WaveletPyramid& b) {
  require_plan(a, b);
  return multiply_blocks(a, b, a.coarse_block_ids());
}

Tensor3 w_product(const Tensor3& a, const Tensor3& b, int levels) {
  if (a.empty() || b.empty()) throw ShapeError("w_product: empty operand");
  if (a.cols() != b.rows() || a.slices() != b.slices()) {
    throw ShapeError("w_product: cannot multiply " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + "x" + std::to_string(a.slices()) + " by " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + "x" +
                     std::to_string(b.slices()));
  }
  require_levels(a.slices(), levels);
  return inverse_w(face_product(forward_w(a, levels), forward_w(b, levels)));
}

WaveletPyramid constant_pyramid(const Matrix& m, Index p, int levels) {
  WaveletPyramid pyr = WaveletPyramid::zeros(m.rows(), m.cols(), p, levels);
  for (const BlockId& id : pyr.block_ids()) pyr.block(id).slice(id.slice) = m;
  return pyr;
}

Tensor3 identity_tensor(Index n, Index p, int levels) {
  return inverse_w(constant_pyramid(Matrix::Identity(n, n), p, levels));
}

Tensor3 inverse_tensor(const Tensor3& a, int levels) {
  if (a.rows() != a.cols()) throw ShapeError("inverse_tensor: frontal slices are not square");
  const WaveletPyramid pyr = forward_w(a, levels);
  WaveletPyramid inv = WaveletPyramid::zeros(a.rows(), a.cols(), a.slices(), levels);
  const auto ids = pyr.block_ids();
  const double floor = static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon();

  detail::parallel_for(static_cast<Index>(ids.size()), [&](Index i) {
    const BlockId& id = ids[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd slice = pyr.block(id).slice(id.slice);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(slice);
    const double rcond = lu.rcond();
    if (!(rcond >= floor)) {
      const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
      throw SingularSliceError(id.level, id.kind == BlockKind::smooth, id.slice, cond);
    }
    inv.block(id).slice(id.slice) = lu.inverse();
  });
  return inverse_w(inv);
}

Tensor3 orthogonal_tensor(const Matrix& q, Index p, int levels) {
  if (q.rows() != q.cols() || q.rows() == 0) {
    throw OrthogonalityError("orthogonal_tensor: q must be a non-empty square matrix");
  }
  const double err = (q.transpose() * q - Matrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
  if (!(err <= 1e-12)) {
    throw OrthogonalityError("orthogonal_tensor: |q^T q - I| = " + std::to_string(err));
  }
  return inverse_w(constant_pyramid(q, p, levels));
}

}  // namespace wten
