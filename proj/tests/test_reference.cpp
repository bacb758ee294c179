#include "fixtures.hpp"
#include "wten/baselines.hpp"
#include "wten/decomposition.hpp"
#include "wten/parallel.hpp"
#include "wten/reference.hpp"
#include "wten/walgebra.hpp"

#include <doctest.h>

using namespace wten;
using fixtures::bitwise_equal;
using fixtures::rel;

namespace {

bool same_pyramid(const WaveletPyramid& a, const WaveletPyramid& b) {
  if (a.levels() != b.levels() || !bitwise_equal(a.smooth, b.smooth)) return false;
  for (int j = 1; j <= a.levels(); ++j) {
    if (!bitwise_equal(a.detail(j), b.detail(j))) return false;
  }
  return true;
}

struct ThreadGuard {
  ~ThreadGuard() { set_thread_count(0); }
};

}  // namespace

TEST_CASE("lifting kernel matches the plain loops bit for bit") {
  fixtures::Sampler s(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Index p = s.dyadic(64);
    const Tensor3 t = s.tensor(s.uniform(1, 7), s.uniform(1, 7), p);
    for (int L = 1; L <= max_levels(p); ++L) {
      const WaveletPyramid fast = forward_w(t, L);
      REQUIRE(same_pyramid(fast, reference::forward_w(t, L)));
      CHECK(bitwise_equal(inverse_w(fast), reference::inverse_w(fast)));
    }
  }
}

TEST_CASE("reference kernels reproduce the worked example") {
  const Tensor3 c = reference::w_product(fixtures::worked::a(), fixtures::worked::b(), 2);
  CHECK(fixtures::max_diff(c, Tensor3::from_slices(fixtures::worked::c())) <= 1e-12);
  CHECK(fixtures::max_diff(reference::matmul(fixtures::mat({{1, 2}, {3, 4}}), fixtures::mat({{5}, {6}})),
                           fixtures::mat({{17}, {39}})) == 0.0);
}

TEST_CASE("optimised products agree with the references") {
  fixtures::Sampler s(42);
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = s.dyadic(32);
    const Index n1 = s.uniform(1, 9), n2 = s.uniform(1, 9), n3 = s.uniform(1, 9);
    const Tensor3 a = s.tensor(n1, n2, p), b = s.tensor(n2, n3, p);
    const int L = static_cast<int>(s.uniform(1, max_levels(p)));
    CHECK(rel(w_product(a, b, L), reference::w_product(a, b, L)) <= 1e-12);
    const WaveletPyramid fa = forward_w(a, L), fb = forward_w(b, L);
    CHECK(rel(inverse_w(face_product(fa, fb)), inverse_w(reference::face_product(fa, fb))) <= 1e-12);
    CHECK(rel(t_product(a, b), reference::t_product_circulant(a, b)) <= 1e-10);
  }
}

TEST_CASE("thread count does not change results") {
  ThreadGuard guard;
  const Tensor3 a = Tensor3::random_uniform(24, 20, 64, 1, -1.0, 1.0);
  const Tensor3 b = Tensor3::random_uniform(20, 16, 64, 2, -1.0, 1.0);
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(64, 64);

  set_thread_count(1);
  const WaveletPyramid f1 = forward_w(a, 4);
  const Tensor3 w1 = w_product(a, b, 6);
  const Tensor3 t1 = t_product(a, b);
  const Tensor3 m1 = mode3_multiply(m, a);
  const Tensor3 s1 = w_svd(a, 5, 3).reconstruction;
  const Tensor3 p1 = pinv_w(a, 6);

  for (int threads : {2, 4, 7}) {
    set_thread_count(threads);
    CHECK(same_pyramid(forward_w(a, 4), f1));
    CHECK(bitwise_equal(w_product(a, b, 6), w1));
    CHECK(bitwise_equal(t_product(a, b), t1));
    CHECK(bitwise_equal(mode3_multiply(m, a), m1));
    CHECK(bitwise_equal(w_svd(a, 5, 3).reconstruction, s1));
    CHECK(bitwise_equal(pinv_w(a, 6), p1));
  }
}
