#pragma once

#include "wten/tensor.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace wten {

/// Tensor product families compared throughout the library.
/// spw is the sparse w variant that only touches the coarsest wavelet blocks.
enum class Method { m, t, w, spw };

std::string_view to_string(Method m);
/// Accepts "m", "t", "w", "spw" (also "sp-w"). Throws ValueError.
Method parse_method(std::string_view text);

// ---------------------------------------------------------------- t-product

/// t-product: DFT along mode 3, facewise complex products, inverse DFT.
/// Only bins 0 .. p/2 are formed; the rest follow by conjugate symmetry.
Tensor3 t_product(const Tensor3& a, const Tensor3& b);

/// t-product transpose: slice 0 transposed, slices 1 .. p-1 transposed and reversed.
Tensor3 t_transpose(const Tensor3& a);

/// t-product unit: I_n in the first frontal slice, zeros elsewhere.
Tensor3 t_identity(Index n, Index p);

/// Moore-Penrose inverse under the t-product (per-frequency SVD pseudo-inverse).
Tensor3 t_pinv(const Tensor3& a, double tol = 1e-12);

/// Rank-r truncation of every frequency slice. Throws RankError.
Tensor3 t_svd(const Tensor3& a, Index rank);

// ---------------------------------------------------------------- m-product

enum class TransformKind { dft, matrix };

/// Invertible transform applied along mode 3 by the m-product.
struct ModeTransform {
  TransformKind kind = TransformKind::dft;
  Eigen::MatrixXd forward;  ///< p x p, empty for dft
  Eigen::MatrixXd inverse;

  static ModeTransform dft() { return {}; }
  /// Throws ValueError if m is not square or |m m^-1 - I| > 1e-10.
  static ModeTransform from_matrix(const Eigen::MatrixXd& m);
  /// Orthonormal DCT-II of length p; its inverse is its transpose.
  static ModeTransform dct(Index p);
};

/// Applies the p x p matrix m along mode 3: out[:, :, k] = sum_l m(k, l) t[:, :, l].
Tensor3 mode3_multiply(const Eigen::MatrixXd& m, const Tensor3& t);

/// m-product: transform both operands, multiply facewise, transform back.
/// A dft transform delegates to t_product.
Tensor3 m_product(const Tensor3& a, const Tensor3& b, const ModeTransform& transform);

/// m-product unit: inverse transform of the all-identity slice stack.
Tensor3 m_identity(Index n, const ModeTransform& transform);

// ---------------------------------------------------------------- operation counts

struct OpCountReport {
  Method kind;
  Index n1, n2, n3, p;
  std::uint64_t count;
};

/// Closed-form operation counts for multiplying n1 x n2 x p by n2 x n3 x p:
///   m: n1 n2 n3 p + (n1 n2 + n2 n3 + n1 n3) p^2
///   t: n1 n2 n3 p + (n1 n2 + n2 n3 + n1 n3) p log2 p
///   w: n1 n2 n3 p + 2 p (n1 n2 + n2 n3 + n1 n3)
/// kind w requires p to be a power of two (ValueError); for t, log2 p is
/// rounded up when p is not a power of two. spw is rejected.
OpCountReport op_count(Method kind, Index n1, Index n2, Index n3, Index p);

/// Count model for a rank-truncated SVD of an n1 x n2 x p tensor. On cubes with
/// m = p / 2^L = 1 it reduces to t: p^4 + 2p^3 log2 p, w: p^4 + 4p^3,
/// spw: 2p^3 + 4p^3, m: p^4 + 2p^4.
std::uint64_t svd_op_count(Method kind, Index n1, Index n2, Index p, int levels);

/// Count model for deblurring with n1 x n1 and n2 x n2 operators. On cubes with
/// m = 1 it reduces to m: 2p^4 + 3p^4, t: 2p^4 + 3p^3 log2 p, w: 2p^4 + 6p^3,
/// spw: 4p^3 + 6p^3.
std::uint64_t deblur_op_count(Method kind, Index n1, Index n2, Index p, int levels);

}  // namespace wten
