#pragma once

#include "wten/lifting.hpp"
#include "wten/tensor.hpp"

// Serial plain-loop implementations of the core kernels. Slow on purpose;
// the tests compare the optimised kernels against these.
namespace wten::reference {

WaveletPyramid forward_w(const Tensor3& t, int levels);
Tensor3 inverse_w(const WaveletPyramid& pyr);

/// Triple-loop product of two matrices.
Matrix matmul(const Matrix& a, const Matrix& b);

WaveletPyramid face_product(const WaveletPyramid& a, const WaveletPyramid& b);
Tensor3 w_product(const Tensor3& a, const Tensor3& b, int levels);

/// t-product through the explicit block-circulant unfolding.
Tensor3 t_product_circulant(const Tensor3& a, const Tensor3& b);

}  // namespace wten::reference
