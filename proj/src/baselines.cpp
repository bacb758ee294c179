#include "wten/baselines.hpp"

#include "block_parallel.hpp"
#include "fft.hpp"
#include "wten/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wten {

using detail::Complex;
using detail::ComplexMatrix;
using detail::HalfSpectrum;

std::string_view to_string(Method m) {
  switch (m) {
    case Method::m: return "m";
    case Method::t: return "t";
    case Method::w: return "w";
    case Method::spw: return "spw";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "m") return Method::m;
  if (text == "t") return Method::t;
  if (text == "w") return Method::w;
  if (text == "spw" || text == "sp-w") return Method::spw;
  throw ValueError("unknown method '" + std::string(text) + "' (expected m, t, w or spw)");
}

namespace {

void require_conformable(const Tensor3& a, const Tensor3& b, const char* what) {
  if (a.empty() || b.empty() || a.cols() != b.rows() || a.slices() != b.slices()) {
    throw ShapeError(std::string(what) + ": operands are not conformable");
  }
}

// Column block width for mode-3 GEMMs; fixed so results are thread-count independent.
constexpr Index kColumnChunk = 1024;

}  // namespace

// ---------------------------------------------------------------- t-product

Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
  require_conformable(a, b, "t_product");
  const HalfSpectrum fa = detail::mode3_rfft(a);
  const HalfSpectrum fb = detail::mode3_rfft(b);
  HalfSpectrum fc(a.rows(), b.cols(), a.slices());
  detail::parallel_for(fc.bins(), [&](Index k) { fc.bin(k).noalias() = fa.bin(k) * fb.bin(k); });
  return detail::mode3_irfft(fc);
}

Tensor3 t_transpose(const Tensor3& a) {
  Tensor3 r(a.cols(), a.rows(), a.slices());
  const Index p = a.slices();
  for (Index k = 0; k < p; ++k) r.slice(k) = a.slice((p - k) % p).transpose();
  return r;
}

Tensor3 t_identity(Index n, Index p) {
  Tensor3 r(n, n, p);
  r.slice(0).setIdentity();
  return r;
}

Tensor3 t_pinv(const Tensor3& a, double tol) {
  const HalfSpectrum fa = detail::mode3_rfft(a);
  HalfSpectrum out(a.cols(), a.rows(), a.slices());
  detail::parallel_for(fa.bins(), [&](Index k) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(fa.bin(k), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    const double cutoff = s.size() > 0 ? tol * s(0) : 0.0;
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
    }
    out.bin(k) = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  });
  return detail::mode3_irfft(out);
}

Tensor3 t_svd(const Tensor3& a, Index rank) {
  const Index q = std::min(a.rows(), a.cols());
  if (rank < 1 || rank > q) {
    throw RankError("t_svd: rank " + std::to_string(rank) + " outside [1, " + std::to_string(q) + "]");
  }
  HalfSpectrum fa = detail::mode3_rfft(a);
  detail::parallel_for(fa.bins(), [&](Index k) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(fa.bin(k), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues().head(rank);
    fa.bin(k) = svd.matrixU().leftCols(rank) * s.asDiagonal() *
                svd.matrixV().leftCols(rank).adjoint();
  });
  return detail::mode3_irfft(fa);
}

// ---------------------------------------------------------------- m-product

ModeTransform ModeTransform::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValueError("mode transform must be a non-empty square matrix");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  ModeTransform t;
  t.kind = TransformKind::matrix;
  t.forward = m;
  t.inverse = lu.inverse();
  const double err =
      (m * t.inverse - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10)) {
    throw ValueError("mode transform is not invertible to 1e-10 (residual " +
                     std::to_string(err) + ")");
  }
  return t;
}

ModeTransform ModeTransform::dct(Index p) {
  if (p < 1) throw ValueError("dct: length must be positive");
  Eigen::MatrixXd m(p, p);
  const double pi = std::numbers::pi;
  for (Index k = 0; k < p; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(p));
    for (Index l = 0; l < p; ++l) {
      m(k, l) = scale * std::cos(pi * static_cast<double>((2 * l + 1) * k) /
                                 static_cast<double>(2 * p));
    }
  }
  ModeTransform t;
  t.kind = TransformKind::matrix;
  t.forward = m;
  t.inverse = m.transpose();
  return t;
}

Tensor3 mode3_multiply(const Eigen::MatrixXd& m, const Tensor3& t) {
  if (m.rows() != t.slices() || m.cols() != t.slices()) {
    throw ShapeError("mode3_multiply: transform size does not match slice count");
  }
  const Index p = t.slices();
  const Index n = t.slice_size();
  Tensor3 out(t.rows(), t.cols(), p);
  const Eigen::Map<const Matrix> in_view(t.data().data(), p, n);
  Eigen::Map<Matrix> out_view(out.data().data(), p, n);
  const Index chunks = (n + kColumnChunk - 1) / kColumnChunk;
  detail::parallel_for(chunks, [&](Index c) {
    const Index first = c * kColumnChunk;
    const Index width = std::min(kColumnChunk, n - first);
    out_view.middleCols(first, width).noalias() = m * in_view.middleCols(first, width);
  });
  return out;
}

Tensor3 m_product(const Tensor3& a, const Tensor3& b, const ModeTransform& transform) {
  if (transform.kind == TransformKind::dft) return t_product(a, b);
  require_conformable(a, b, "m_product");
  const Tensor3 ha = mode3_multiply(transform.forward, a);
  const Tensor3 hb = mode3_multiply(transform.forward, b);
  Tensor3 hc(a.rows(), b.cols(), a.slices());
  detail::parallel_for(a.slices(), [&](Index k) {
    SliceMap out(hc.slice_ptr(k), a.rows(), b.cols());
    out.noalias() = ha.slice(k) * hb.slice(k);
  });
  return mode3_multiply(transform.inverse, hc);
}

Tensor3 m_identity(Index n, const ModeTransform& transform) {
  if (transform.kind == TransformKind::dft) {
    throw ValueError("m_identity: dft transform has no fixed length; use t_identity");
  }
  return mode3_multiply(transform.inverse,
                        Tensor3::repeat_slice(Matrix::Identity(n, n), transform.forward.rows()));
}

// ---------------------------------------------------------------- operation counts

namespace {

using Wide = unsigned __int128;

std::uint64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw ValueError("operation count overflows 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

Wide ceil_log2(Index p) {
  Wide bits = 0;
  while ((Index{1} << bits) < p) ++bits;
  return bits;
}

void require_positive(std::initializer_list<Index> dims) {
  for (Index d : dims) {
    if (d < 1) throw ValueError("operation counts need positive dimensions");
  }
}

}  // namespace

OpCountReport op_count(Method kind, Index n1, Index n2, Index n3, Index p) {
  require_positive({n1, n2, n3, p});
  const Wide face = Wide(n1) * Wide(n2) * Wide(n3) * Wide(p);
  const Wide cross = Wide(n1) * Wide(n2) + Wide(n2) * Wide(n3) + Wide(n1) * Wide(n3);
  Wide count = 0;
  switch (kind) {
    case Method::m:
      count = face + cross * Wide(p) * Wide(p);
      break;
    case Method::t:
      count = face + cross * Wide(p) * ceil_log2(p);
      break;
    case Method::w:
      if ((p & (p - 1)) != 0) throw ValueError("op_count(w) expects p to be a power of two");
      count = face + 2 * Wide(p) * cross;
      break;
    case Method::spw:
      throw ValueError("op_count is defined for the m, t and w products");
  }
  return {kind, n1, n2, n3, p, narrow(count)};
}

std::uint64_t svd_op_count(Method kind, Index n1, Index n2, Index p, int levels) {
  require_positive({n1, n2, p});
  const Wide slice = Wide(n1) * Wide(n2) * Wide(std::min(n1, n2));
  const Wide plane = Wide(n1) * Wide(n2);
  switch (kind) {
    case Method::m: return narrow(slice * Wide(p) + 2 * plane * Wide(p) * Wide(p));
    case Method::t: return narrow(slice * Wide(p) + 2 * plane * Wide(p) * ceil_log2(p));
    case Method::w: return narrow(slice * Wide(p) + 4 * plane * Wide(p));
    case Method::spw: {
      const Wide coarse = Wide(p >> levels);
      return narrow(2 * coarse * slice + 4 * plane * Wide(p));
    }
  }
  return 0;
}

std::uint64_t deblur_op_count(Method kind, Index n1, Index n2, Index p, int levels) {
  require_positive({n1, n2, p});
  const Wide slice = Wide(n1) * Wide(n1) * Wide(n1) + Wide(n2) * Wide(n2) * Wide(n2);
  const Wide cross = Wide(n1) * Wide(n1) + Wide(n1) * Wide(n2) + Wide(n2) * Wide(n2);
  switch (kind) {
    case Method::m: return narrow(slice * Wide(p) + cross * Wide(p) * Wide(p));
    case Method::t: return narrow(slice * Wide(p) + cross * Wide(p) * ceil_log2(p));
    case Method::w: return narrow(slice * Wide(p) + 2 * Wide(p) * cross);
    case Method::spw: {
      const Wide coarse = Wide(p >> levels);
      return narrow(2 * coarse * slice + 2 * Wide(p) * cross);
    }
  }
  return 0;
}

}  // namespace wten
