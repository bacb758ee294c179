#include "wten/tensor.hpp"

#include "wten/error.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <string>

#if defined(__linux__)
#include <sys/mman.h>
#endif

namespace wten {

void detail::advise_huge_pages([[maybe_unused]] void* p, [[maybe_unused]] std::size_t bytes) noexcept {
#if defined(__linux__) && defined(MADV_HUGEPAGE)
  madvise(p, bytes, MADV_HUGEPAGE);
#endif
}

namespace {

using ColMajor = Eigen::MatrixXd;

std::string shape_str(const Tensor3& t) {
  return std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + "x" +
         std::to_string(t.slices());
}

void check_index(const Tensor3& t, Index k) {
  if (k < 0 || k >= t.slices()) {
    throw IndexError("frontal slice " + std::to_string(k) + " out of range for " + shape_str(t));
  }
}

}  // namespace

Tensor3::Tensor3(Index n1, Index n2, Index p) : n1_(n1), n2_(n2), p_(p) {
  if (n1 <= 0 || n2 <= 0 || p <= 0) {
    throw ShapeError("tensor dimensions must be positive, got " + std::to_string(n1) + "x" +
                     std::to_string(n2) + "x" + std::to_string(p));
  }
  data_.assign(static_cast<std::size_t>(n1 * n2 * p), 0.0);
}

Tensor3 Tensor3::from_slices(const std::vector<Matrix>& slices) {
  if (slices.empty()) throw ShapeError("from_slices: no slices given");
  Tensor3 t(slices.front().rows(), slices.front().cols(), static_cast<Index>(slices.size()));
  for (Index k = 0; k < t.slices(); ++k) insert_slice(t, k, slices[static_cast<std::size_t>(k)]);
  return t;
}

Tensor3 Tensor3::repeat_slice(const Matrix& m, Index p) {
  Tensor3 t(m.rows(), m.cols(), p);
  for (Index k = 0; k < p; ++k) t.slice(k) = m;
  return t;
}

Tensor3 Tensor3::random_uniform(Index n1, Index n2, Index p, std::uint64_t seed, double lo,
                                double hi) {
  Tensor3 t(n1, n2, p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& x : t.data_) x = dist(rng);
  return t;
}

SliceMap Tensor3::slice(Index k) {
  check_index(*this, k);
  return SliceMap(slice_ptr(k), n1_, n2_);
}

ConstSliceMap Tensor3::slice(Index k) const {
  check_index(*this, k);
  return ConstSliceMap(slice_ptr(k), n1_, n2_);
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
Tensor3 operator*(Tensor3 a, double s) { return a *= s; }

void require_same_shape(const Tensor3& a, const Tensor3& b, const char* what) {
  if (!a.same_shape(b) || a.empty()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " +
                     shape_str(b));
  }
}

MatrixSlice frontal_slice(const Tensor3& t, Index k) { return t.slice(k); }

void insert_slice(Tensor3& t, Index k, const MatrixSlice& m) {
  check_index(t, k);
  if (m.rows() != t.rows() || m.cols() != t.cols()) {
    throw ShapeError("insert_slice: matrix is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", tensor slices are " +
                     std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  }
  t.slice(k) = m;
}

Tensor3 transpose(const Tensor3& t) {
  Tensor3 r(t.cols(), t.rows(), t.slices());
  for (Index k = 0; k < t.slices(); ++k) r.slice(k) = t.slice(k).transpose();
  return r;
}

double trace(const Tensor3& t) {
  if (t.rows() != t.cols()) throw ShapeError("trace: frontal slices are not square");
  double sum = 0.0;
  for (Index k = 0; k < t.slices(); ++k) sum += t.slice(k).trace();
  return sum;
}

double frobenius_norm(const Tensor3& t) {
  double sum = 0.0;
  for (double x : t.data()) sum += x * x;
  return std::sqrt(sum);
}

double distance(const Tensor3& a, const Tensor3& b) {
  require_same_shape(a, b, "distance");
  double sum = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double max_abs(const Tensor3& t) {
  double m = 0.0;
  for (double x : t.data()) m = std::max(m, std::abs(x));
  return m;
}

SvdResult matrix_svd(const Eigen::Ref<const Matrix>& m) {
  static std::once_flag single_threaded_blas;
  std::call_once(single_threaded_blas, [] { openblas_set_num_threads(1); });

  SvdResult r;
  const Index q = std::min(m.rows(), m.cols());
  if (q == 0) return r;
  // The row-major buffer of m is column-major m^T = U' S V'^T, so m = V' S U'^T.
  ColMajor work = m.transpose();
  const auto rows = static_cast<lapack_int>(m.cols());
  const auto cols = static_cast<lapack_int>(m.rows());
  ColMajor u_t(m.cols(), q), vt_t(q, m.rows());
  r.sigma.resize(static_cast<std::size_t>(q));
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, work.data(), rows, r.sigma.data(),
                                         u_t.data(), rows, vt_t.data(), static_cast<lapack_int>(q));
  if (info == 0) {
    r.u = vt_t.transpose();
    r.v = u_t;
    return r;
  }
  // dgesdd did not converge; the two-sided Jacobi method always does.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  r.u = svd.matrixU();
  r.v = svd.matrixV();
  const auto& s = svd.singularValues();
  r.sigma.assign(s.data(), s.data() + s.size());
  return r;
}

Matrix matrix_pinv(const Eigen::Ref<const Matrix>& m, double rel_tol) {
  const SvdResult svd = matrix_svd(m);
  const Index q = static_cast<Index>(svd.sigma.size());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(q);
  const double cutoff = q > 0 ? rel_tol * svd.sigma[0] : 0.0;
  for (Index i = 0; i < q; ++i) {
    const double s = svd.sigma[static_cast<std::size_t>(i)];
    if (s > cutoff && s > 0.0) inv(i) = 1.0 / s;
  }
  if (q == 0) return Matrix::Zero(m.cols(), m.rows());
  return svd.v * inv.asDiagonal() * svd.u.transpose();
}

}  // namespace wten
