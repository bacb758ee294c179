#include "wten/reference.hpp"

#include "wten/error.hpp"

namespace wten::reference {

WaveletPyramid forward_w(const Tensor3& t, int levels) {
  require_levels(t.slices(), levels);
  WaveletPyramid pyr = WaveletPyramid::zeros(t.rows(), t.cols(), t.slices(), levels);
  Tensor3 cur = t;
  for (int j = 1; j <= levels; ++j) {
    const Index half = cur.slices() / 2;
    Tensor3 next(t.rows(), t.cols(), half);
    Tensor3& d = pyr.detail(j);
    for (Index k = 0; k < half; ++k) {
      for (Index r = 0; r < t.rows(); ++r) {
        for (Index c = 0; c < t.cols(); ++c) {
          const double diff = cur(r, c, 2 * k) - cur(r, c, 2 * k + 1);
          d(r, c, k) = diff;
          next(r, c, k) = cur(r, c, 2 * k + 1) + diff * 0.5;
        }
      }
    }
    cur = std::move(next);
  }
  pyr.smooth = std::move(cur);
  return pyr;
}

Tensor3 inverse_w(const WaveletPyramid& pyr) {
  pyr.validate();
  Tensor3 cur = pyr.smooth;
  for (int j = pyr.levels(); j >= 1; --j) {
    const Tensor3& d = pyr.detail(j);
    Tensor3 up(cur.rows(), cur.cols(), 2 * cur.slices());
    for (Index k = 0; k < cur.slices(); ++k) {
      for (Index r = 0; r < cur.rows(); ++r) {
        for (Index c = 0; c < cur.cols(); ++c) {
          const double even = cur(r, c, k) - d(r, c, k) * 0.5;
          up(r, c, 2 * k + 1) = even;
          up(r, c, 2 * k) = d(r, c, k) + even;
        }
      }
    }
    cur = std::move(up);
  }
  return cur;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
  Matrix c = Matrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index l = 0; l < a.cols(); ++l) {
      for (Index j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
    }
  }
  return c;
}

namespace {

Tensor3 slice_products(const Tensor3& a, const Tensor3& b) {
  if (a.cols() != b.rows() || a.slices() != b.slices()) {
    throw ShapeError("face product: blocks are not conformable");
  }
  Tensor3 c(a.rows(), b.cols(), a.slices());
  for (Index k = 0; k < a.slices(); ++k) c.slice(k) = matmul(a.slice(k), b.slice(k));
  return c;
}

}  // namespace

WaveletPyramid face_product(const WaveletPyramid& a, const WaveletPyramid& b) {
  if (a.levels() != b.levels()) throw LevelError("face product: level counts differ");
  WaveletPyramid c;
  c.smooth = slice_products(a.smooth, b.smooth);
  for (int j = 1; j <= a.levels(); ++j) c.details.push_back(slice_products(a.detail(j), b.detail(j)));
  return c;
}

Tensor3 w_product(const Tensor3& a, const Tensor3& b, int levels) {
  return reference::inverse_w(
      reference::face_product(reference::forward_w(a, levels), reference::forward_w(b, levels)));
}

Tensor3 t_product_circulant(const Tensor3& a, const Tensor3& b) {
  if (a.cols() != b.rows() || a.slices() != b.slices()) {
    throw ShapeError("t_product_circulant: operands are not conformable");
  }
  const Index p = a.slices();
  const Index n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  // bcirc(a) is (n1 p) x (n2 p) with block (r, c) = a[:, :, (r - c) mod p].
  Matrix circ(n1 * p, n2 * p);
  for (Index r = 0; r < p; ++r) {
    for (Index c = 0; c < p; ++c) circ.block(r * n1, c * n2, n1, n2) = a.slice(((r - c) % p + p) % p);
  }
  Matrix unfold(n2 * p, n3);
  for (Index k = 0; k < p; ++k) unfold.block(k * n2, 0, n2, n3) = b.slice(k);
  const Matrix prod = matmul(circ, unfold);
  Tensor3 out(n1, n3, p);
  for (Index k = 0; k < p; ++k) out.slice(k) = prod.block(k * n1, 0, n1, n3);
  return out;
}

}  // namespace wten::reference
