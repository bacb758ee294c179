#pragma once

#include "wten/lifting.hpp"
#include "wten/tensor.hpp"

#include <algorithm>
#include <cstring>
#include <cmath>
#include <initializer_list>
#include <random>
#include <vector>

namespace fixtures {

using wten::Index;
using wten::Matrix;
using wten::Tensor3;

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double max_diff(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_diff(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b)) return INFINITY;
  double m = 0.0;
  for (Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// |a - b|_F / max(|b|_F, tiny)
inline double rel(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b)) return INFINITY;
  const double scale = std::max(wten::frobenius_norm(b), 1e-300);
  return wten::distance(a, b) / scale;
}

inline bool bitwise_equal(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b)) return false;
  return std::equal(a.data().begin(), a.data().end(), b.data().begin(), [](double x, double y) {
    return std::memcmp(&x, &y, sizeof(double)) == 0;
  });
}

// Worked 2x3x4 by 3x2x4 product at two levels.
namespace worked {

inline Tensor3 a() {
  return Tensor3::from_slices({mat({{3, 0, 2}, {3, 3, 0}}), mat({{2, 0, 0}, {1, 1, 1}}),
                               mat({{0, 1, 4}, {3, 3, 2}}), mat({{3, 0, 5}, {2, 2, 5}})});
}

inline Tensor3 b() {
  return Tensor3::from_slices({mat({{1, 3}, {1, 2}, {3, 1}}), mat({{5, 0}, {0, 0}, {0, 3}}),
                               mat({{3, 4}, {0, 4}, {5, 0}}), mat({{5, 5}, {5, 4}, {5, 3}})});
}

inline std::vector<Matrix> a_s1() { return {mat({{2.5, 0, 1}, {2, 2, 0.5}}), mat({{1.5, 0.5, 4.5}, {2.5, 2.5, 3.5}})}; }
inline std::vector<Matrix> a_d1() { return {mat({{1, 0, 2}, {2, 2, -1}}), mat({{-3, 1, -1}, {1, 1, -3}})}; }
inline std::vector<Matrix> b_s1() {
  return {mat({{3, 1.5}, {0.5, 1}, {1.5, 2}}), mat({{4, 4.5}, {2.5, 4}, {5, 1.5}})};
}
inline std::vector<Matrix> b_d1() {
  return {mat({{-4, 3}, {1, 2}, {3, -2}}), mat({{-2, -1}, {-5, 0}, {0, -3}})};
}
inline Matrix a_s2() { return mat({{2, 0.25, 2.75}, {2.25, 2.25, 2}}); }
inline Matrix a_d2() { return mat({{1, -0.5, -3.5}, {-0.5, -0.5, -3}}); }
inline Matrix b_s2() { return mat({{3.5, 3}, {1.5, 2.5}, {3.25, 1.75}}); }
inline Matrix b_d2() { return mat({{-1, -3}, {-2, -3}, {-3.5, 0.5}}); }

inline std::vector<Matrix> c_d1() { return {mat({{2, -1}, {-9, 12}}), mat({{1, 6}, {-7, 8}})}; }
inline Matrix c_s2() { return mat({{16.3125, 11.4375}, {17.75, 15.875}}); }
inline Matrix c_d2() { return mat({{12.25, -3.25}, {12, 1.5}}); }
inline std::vector<Matrix> c_s1() {
  return {mat({{22.4375, 9.8125}, {23.75, 16.625}}), mat({{10.1875, 13.0625}, {11.75, 15.125}})};
}
inline std::vector<Matrix> c() {
  return {mat({{23.4375, 9.3125}, {19.25, 22.625}}), mat({{21.4375, 10.3125}, {28.25, 10.625}}),
          mat({{10.6875, 16.0625}, {8.25, 19.125}}), mat({{9.6875, 10.0625}, {15.25, 11.125}})};
}

}  // namespace worked

// 2x3x2 by 3x2x2 pair where (a *_w b)^+ differs from b^+ *_w a^+ (one level).
namespace reversal {

inline Tensor3 a() {
  return Tensor3::from_slices({mat({{0, 1, 1}, {0, 0, 1}}), mat({{1, 0, 1}, {0, 1, 1}})});
}
inline Tensor3 b() {
  return Tensor3::from_slices({mat({{0, 0}, {0, 0}, {1, 1}}), mat({{0, 0}, {0, 1}, {1, 0}})});
}
inline Matrix a_s() { return mat({{0.5, 0.5, 1}, {0, 0.5, 1}}); }
inline Matrix a_d() { return mat({{-1, 1, 0}, {0, -1, 0}}); }
inline Matrix a_pinv_s() { return mat({{2, -2}, {0, 0.4}, {0, 0.8}}); }
inline Matrix a_pinv_d() { return mat({{-1, -1}, {0, -1}, {0, 0}}); }
inline Matrix b_pinv_s() { return mat({{0, -1, 1}, {0, 2, 0}}); }
inline Matrix b_pinv_d() { return mat({{0, 0, 0}, {0, -0.5, 0.5}}); }
inline Matrix c_s() { return mat({{0.32, 0.32}, {0.24, 0.24}}); }
inline Matrix c_d() { return mat({{0, 0}, {-0.5, 0.5}}); }
inline std::vector<Matrix> c() {
  return {mat({{0.32, 0.32}, {-0.01, 0.49}}), mat({{0.32, 0.32}, {0.49, -0.01}})};
}
inline Matrix d_s() { return mat({{0, 0.4}, {0, 0.8}}); }
inline Matrix d_d() { return mat({{0, 0}, {0, 0.5}}); }
inline std::vector<Matrix> d() { return {mat({{0, 0.4}, {0, 1.05}}), mat({{0, 0.4}, {0, 0.55}})}; }

}  // namespace reversal

/// Random shapes and seeds for property loops.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Index uniform(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }
  std::uint64_t seed() { return rng_(); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// p = odd * 2^k with p <= pmax and at least one level.
  Index dyadic(Index pmax) {
    while (true) {
      const Index p = uniform(2, pmax);
      if (p % 2 == 0) return p;
    }
  }
  Tensor3 tensor(Index n1, Index n2, Index p) { return Tensor3::random_uniform(n1, n2, p, seed(), -1.0, 1.0); }

 private:
  std::mt19937_64 rng_;
};

/// Square tensor whose wavelet-domain slices are diagonally dominant.
inline Tensor3 well_conditioned(Index n, Index p, int levels, std::uint64_t seed) {
  wten::WaveletPyramid pyr = wten::forward_w(Tensor3::random_uniform(n, n, p, seed, -1.0, 1.0), levels);
  auto boost = [n](Tensor3& t) {
    for (Index k = 0; k < t.slices(); ++k) t.slice(k) += Matrix::Identity(n, n) * (2.0 * static_cast<double>(n));
  };
  boost(pyr.smooth);
  for (Tensor3& d : pyr.details) boost(d);
  return wten::inverse_w(pyr);
}

}  // namespace fixtures
