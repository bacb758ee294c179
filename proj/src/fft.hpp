#pragma once

#include "wten/allocator.hpp"
#include "wten/tensor.hpp"

#include <complex>
#include <vector>

namespace wten::detail {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexSliceMap = Eigen::Map<ComplexMatrix>;
using ConstComplexSliceMap = Eigen::Map<const ComplexMatrix>;

/// Mode-3 DFT of a real tensor, keeping the non-redundant bins 0 .. p/2.
/// Bin k is a contiguous row-major rows x cols complex matrix.
class HalfSpectrum {
 public:
  HalfSpectrum(Index rows, Index cols, Index p)
      : rows_(rows), cols_(cols), p_(p),
        data_(static_cast<std::size_t>(rows * cols * (p / 2 + 1))) {}

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index length() const noexcept { return p_; }
  Index bins() const noexcept { return p_ / 2 + 1; }

  ComplexSliceMap bin(Index k) { return {data_.data() + k * rows_ * cols_, rows_, cols_}; }
  ConstComplexSliceMap bin(Index k) const {
    return {data_.data() + k * rows_ * cols_, rows_, cols_};
  }
  Complex* data() noexcept { return data_.data(); }
  const Complex* data() const noexcept { return data_.data(); }

 private:
  Index rows_, cols_, p_;
  std::vector<Complex, LargePageAllocator<Complex>> data_;
};

HalfSpectrum mode3_rfft(const Tensor3& t);

/// Inverse of mode3_rfft including the 1/p normalisation.
Tensor3 mode3_irfft(const HalfSpectrum& s);

}  // namespace wten::detail
