#pragma once

#include "wten/allocator.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wten {

using Index = std::ptrdiff_t;

/// Dense row-major real matrix; the value type of a frontal slice.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixSlice = Matrix;
using SliceMap = Eigen::Map<Matrix>;
using ConstSliceMap = Eigen::Map<const Matrix>;

/// Dense real third-order tensor of shape n1 x n2 x p.
///
/// Storage is contiguous with the slice index slowest: entry (i, j, k) lives
/// at k*n1*n2 + i*n2 + j, so each frontal slice is a contiguous row-major
/// n1 x n2 block. All indices in this API are 0-based; frontal slice k here
/// is slice k+1 in the usual 1-based notation A(:, :, k+1).
class Tensor3 {
 public:
  /// Empty placeholder (0 x 0 x 0). Every library operation rejects it.
  Tensor3() = default;
  /// Zero-filled tensor. Throws ShapeError unless all dimensions are positive.
  Tensor3(Index n1, Index n2, Index p);

  /// Builds a tensor from frontal slices, which must share one shape.
  static Tensor3 from_slices(const std::vector<Matrix>& slices);
  /// Every frontal slice equal to `m`.
  static Tensor3 repeat_slice(const Matrix& m, Index p);
  /// Entries uniform in [lo, hi), reproducible from `seed`.
  static Tensor3 random_uniform(Index n1, Index n2, Index p, std::uint64_t seed,
                                double lo = 0.0, double hi = 1.0);

  Index rows() const noexcept { return n1_; }
  Index cols() const noexcept { return n2_; }
  Index slices() const noexcept { return p_; }
  Index slice_size() const noexcept { return n1_ * n2_; }
  Index size() const noexcept { return static_cast<Index>(data_.size()); }
  bool empty() const noexcept { return data_.empty(); }
  bool same_shape(const Tensor3& o) const noexcept {
    return n1_ == o.n1_ && n2_ == o.n2_ && p_ == o.p_;
  }

  double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
  double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Writable view of frontal slice k. Throws IndexError when k is out of range.
  SliceMap slice(Index k);
  ConstSliceMap slice(Index k) const;

  /// Unchecked slice pointer, for kernels that already validated k.
  double* slice_ptr(Index k) noexcept { return data_.data() + k * slice_size(); }
  const double* slice_ptr(Index k) const noexcept { return data_.data() + k * slice_size(); }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);

  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.same_shape(b) && a.data_ == b.data_;
  }

 private:
  Index offset(Index i, Index j, Index k) const noexcept { return (k * n1_ + i) * n2_ + j; }

  Index n1_ = 0;
  Index n2_ = 0;
  Index p_ = 0;
  std::vector<double, LargePageAllocator<double>> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double s, Tensor3 a);
Tensor3 operator*(Tensor3 a, double s);

/// Copy of frontal slice k (0-based). Throws IndexError.
MatrixSlice frontal_slice(const Tensor3& t, Index k);
/// Overwrites frontal slice k with `m`. Throws IndexError or ShapeError.
void insert_slice(Tensor3& t, Index k, const MatrixSlice& m);

/// Slice-wise transpose: result(i, j, k) = t(j, i, k).
Tensor3 transpose(const Tensor3& t);

/// Sum of the diagonals of every frontal slice. Throws ShapeError unless n1 == n2.
double trace(const Tensor3& t);

double frobenius_norm(const Tensor3& t);

/// Frobenius norm of a - b. Throws ShapeError on mismatched shapes.
double distance(const Tensor3& a, const Tensor3& b);

/// max |entry|, used for absolute-tolerance comparisons.
double max_abs(const Tensor3& t);

struct SvdResult {
  Matrix u;                    ///< rows x q, orthonormal columns
  std::vector<double> sigma;   ///< q values, descending, non-negative
  Matrix v;                    ///< cols x q, orthonormal columns
};

/// Thin SVD, q = min(rows, cols). A zero matrix yields zero singular values.
SvdResult matrix_svd(const Eigen::Ref<const Matrix>& m);

/// Moore-Penrose pseudo-inverse of one matrix via SVD; singular values at or
/// below rel_tol * sigma_max are treated as zero.
Matrix matrix_pinv(const Eigen::Ref<const Matrix>& m, double rel_tol);

/// Throws ShapeError with `what` unless a and b have identical shape.
void require_same_shape(const Tensor3& a, const Tensor3& b, const char* what);

}  // namespace wten
