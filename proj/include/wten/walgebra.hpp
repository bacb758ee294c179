#pragma once

#include "wten/lifting.hpp"
#include "wten/tensor.hpp"

namespace wten {

/// Facewise product of two pyramids: every detail and smooth slice of the
/// result is the matrix product of the matching slices of a and b.
/// Requires equal p and L and a.cols() == b.rows(); throws ShapeError otherwise.
WaveletPyramid face_product(const WaveletPyramid& a, const WaveletPyramid& b);

/// Face product restricted to the coarsest pair s_L and d_L. The finer
/// detail blocks d_1 .. d_{L-1} of the result are zero.
WaveletPyramid coarse_face_product(const WaveletPyramid& a, const WaveletPyramid& b);

/// The w-product a *_w b = W^{-1}(W(a) face W(b)) at `levels` decomposition levels.
/// a is n1 x n2 x p, b is n2 x n3 x p. Throws ShapeError or LevelError.
Tensor3 w_product(const Tensor3& a, const Tensor3& b, int levels);

/// Pyramid whose every smooth and detail slice equals m.
WaveletPyramid constant_pyramid(const Matrix& m, Index p, int levels);

/// Unit of the w-product: every wavelet-domain slice is I_n.
Tensor3 identity_tensor(Index n, Index p, int levels);

/// Slicewise inverse in the wavelet domain, so a *_w inverse = identity.
/// Throws SingularSliceError naming the first (in block order) slice whose
/// reciprocal condition estimate falls below n * machine epsilon.
Tensor3 inverse_tensor(const Tensor3& a, int levels);

/// Tensor whose every wavelet-domain slice is the orthogonal matrix q.
/// Throws OrthogonalityError unless q is square with |q^T q - I| <= 1e-12 entrywise.
Tensor3 orthogonal_tensor(const Matrix& q, Index p, int levels);

}  // namespace wten
