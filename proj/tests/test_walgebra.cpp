#include "fixtures.hpp"
#include "wten/error.hpp"
#include "wten/parallel.hpp"
#include "wten/walgebra.hpp"

#include <doctest.h>

#include <numbers>

using namespace wten;
namespace ex = fixtures::worked;
using fixtures::max_diff;
using fixtures::rel;

TEST_CASE("face product of the worked example") {
  const WaveletPyramid c = face_product(forward_w(ex::a(), 2), forward_w(ex::b(), 2));
  CHECK(max_diff(c.smooth.slice(0), ex::c_s2()) == 0.0);
  CHECK(max_diff(c.detail(2).slice(0), ex::c_d2()) == 0.0);
  CHECK(max_diff(c.detail(1).slice(0), ex::c_d1()[0]) == 0.0);
  CHECK(max_diff(c.detail(1).slice(1), ex::c_d1()[1]) == 0.0);
}

TEST_CASE("identity blocks are neutral in the face product") {
  const WaveletPyramid id = constant_pyramid(Matrix::Identity(3, 3), 8, 2);
  const WaveletPyramid p = forward_w(Tensor3::random_uniform(3, 3, 8, 4), 2);
  const WaveletPyramid r = face_product(id, p);
  CHECK(r.smooth == p.smooth);
  for (int j = 1; j <= 2; ++j) CHECK(r.detail(j) == p.detail(j));
}

TEST_CASE("face product shape checks") {
  const WaveletPyramid a = forward_w(Tensor3(2, 3, 8), 2);
  CHECK_THROWS_AS(face_product(a, forward_w(Tensor3(2, 2, 8), 2)), ShapeError);
  CHECK_THROWS_AS(face_product(a, forward_w(Tensor3(3, 2, 8), 3)), ShapeError);
  CHECK_THROWS_AS(face_product(a, forward_w(Tensor3(3, 2, 16), 2)), ShapeError);
}

TEST_CASE("w-product of the worked example") {
  const Tensor3 c = w_product(ex::a(), ex::b(), 2);
  REQUIRE(c.rows() == 2);
  REQUIRE(c.cols() == 2);
  REQUIRE(c.slices() == 4);
  for (Index k = 0; k < 4; ++k) CHECK(max_diff(c.slice(k), ex::c()[k]) == 0.0);
  CHECK_THROWS_AS(w_product(ex::a(), ex::a(), 2), ShapeError);
  CHECK_THROWS_AS(w_product(ex::a(), ex::b(), 3), LevelError);
}

TEST_CASE("w-product of scalar tubes") {
  const double a1 = 3, a2 = -1, b1 = 0.5, b2 = 4;
  Tensor3 a(1, 1, 2), b(1, 1, 2);
  a(0, 0, 0) = a1;
  a(0, 0, 1) = a2;
  b(0, 0, 0) = b1;
  b(0, 0, 1) = b2;
  const double cd = (a1 - a2) * (b1 - b2);
  const double cs = 0.5 * (a1 + a2) * 0.5 * (b1 + b2);
  const Tensor3 c = w_product(a, b, 1);
  CHECK(c(0, 0, 1) == cs - cd / 2);
  CHECK(c(0, 0, 0) == cd + cs - cd / 2);
}

TEST_CASE("identity tensor") {
  const Tensor3 tube = identity_tensor(1, 2, 1);
  CHECK(tube(0, 0, 0) == 1.5);
  CHECK(tube(0, 0, 1) == 0.5);

  const WaveletPyramid blocks = forward_w(identity_tensor(2, 4, 2), 2);
  CHECK(max_diff(blocks.smooth.slice(0), Matrix::Identity(2, 2)) == 0.0);
  for (int j = 1; j <= 2; ++j) {
    for (Index k = 0; k < blocks.detail(j).slices(); ++k) {
      CHECK(max_diff(blocks.detail(j).slice(k), Matrix::Identity(2, 2)) == 0.0);
    }
  }

  const Tensor3 a = Tensor3::random_uniform(3, 3, 8, 6);
  const Tensor3 id = identity_tensor(3, 8, 3);
  CHECK(rel(w_product(a, id, 3), a) < 1e-14);
  CHECK(rel(w_product(id, a, 3), a) < 1e-14);
  const Tensor3 rect = Tensor3::random_uniform(2, 5, 8, 6);
  CHECK(rel(w_product(rect, identity_tensor(5, 8, 2), 2), rect) < 1e-14);
  CHECK_THROWS_AS(identity_tensor(2, 6, 2), LevelError);
}

TEST_CASE("inverse tensor") {
  SUBCASE("identity is its own inverse") {
    const Tensor3 id = identity_tensor(3, 8, 3);
    CHECK(max_diff(inverse_tensor(id, 3), id) < 1e-15);
  }
  SUBCASE("diagonal blocks") {
    const Tensor3 two = inverse_w(constant_pyramid(2.0 * Matrix::Identity(2, 2), 4, 2));
    const WaveletPyramid inv = forward_w(inverse_tensor(two, 2), 2);
    CHECK(max_diff(inv.smooth.slice(0), 0.5 * Matrix::Identity(2, 2)) < 1e-15);
    for (int j = 1; j <= 2; ++j) {
      for (Index k = 0; k < inv.detail(j).slices(); ++k) {
        CHECK(max_diff(inv.detail(j).slice(k), 0.5 * Matrix::Identity(2, 2)) < 1e-15);
      }
    }
  }
  SUBCASE("random well-conditioned") {
    const Tensor3 a = fixtures::well_conditioned(4, 8, 2, 17);
    const Tensor3 inv = inverse_tensor(a, 2);
    const Tensor3 id = identity_tensor(4, 8, 2);
    CHECK(distance(w_product(a, inv, 2), id) < 1e-10);
    CHECK(distance(w_product(inv, a, 2), id) < 1e-10);
    CHECK(rel(inverse_tensor(inv, 2), a) < 1e-12);
  }
  SUBCASE("singular slice is reported") {
    WaveletPyramid pyr = constant_pyramid(Matrix::Identity(2, 2), 8, 2);
    pyr.detail(2).slice(1).setZero();
    const Tensor3 a = inverse_w(pyr);
    try {
      inverse_tensor(a, 2);
      FAIL("expected SingularSliceError");
    } catch (const SingularSliceError& e) {
      CHECK(e.level() == 2);
      CHECK_FALSE(e.smooth());
      CHECK(e.slice() == 1);
      CHECK(std::isinf(e.condition()));
    }
  }
  SUBCASE("non-square") { CHECK_THROWS_AS(inverse_tensor(Tensor3(2, 3, 4), 1), ShapeError); }
}

TEST_CASE("orthogonal tensor") {
  CHECK(max_diff(orthogonal_tensor(Matrix::Identity(2, 2), 8, 3), identity_tensor(2, 8, 3)) == 0.0);

  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  const Matrix rot = fixtures::mat({{c, -s}, {s, c}});
  const Tensor3 q = orthogonal_tensor(rot, 8, 3);
  CHECK(max_diff(w_product(transpose(q), q, 3), identity_tensor(2, 8, 3)) <= 1e-12);

  Eigen::VectorXd v(3);
  v << 1, -2, 0.5;
  const Matrix house = Matrix::Identity(3, 3) - 2.0 * v * v.transpose() / v.squaredNorm();
  const Tensor3 h = orthogonal_tensor(house, 4, 2);
  CHECK(max_diff(w_product(transpose(h), h, 2), identity_tensor(3, 4, 2)) <= 1e-12);

  CHECK_THROWS_AS(orthogonal_tensor(fixtures::mat({{1, 0.1}, {0, 1}}), 4, 2), OrthogonalityError);
  CHECK_THROWS_AS(orthogonal_tensor(Matrix::Identity(2, 3), 4, 2), OrthogonalityError);
}

TEST_CASE("algebraic laws on random instances") {
  fixtures::Sampler rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = rng.dyadic(32);
    const int levels = static_cast<int>(rng.uniform(1, max_levels(p)));
    const Index n1 = rng.uniform(1, 6), n2 = rng.uniform(1, 6), n3 = rng.uniform(1, 6), n4 = rng.uniform(1, 6);
    const Tensor3 a = rng.tensor(n1, n2, p), b = rng.tensor(n2, n3, p), c = rng.tensor(n3, n4, p);

    const Tensor3 left = w_product(w_product(a, b, levels), c, levels);
    const Tensor3 right = w_product(a, w_product(b, c, levels), levels);
    CHECK(distance(left, right) <= 1e-10 * frobenius_norm(a) * frobenius_norm(b) * frobenius_norm(c));

    const Tensor3 ab = w_product(a, b, levels);
    CHECK(rel(transpose(ab), w_product(transpose(b), transpose(a), levels)) <= 1e-12);

    const Tensor3 a2 = rng.tensor(n1, n2, p);
    const double alpha = rng.real(-3, 3), beta = rng.real(-3, 3);
    const Tensor3 lin = alpha * ab + beta * w_product(a2, b, levels);
    CHECK(rel(w_product(alpha * a + beta * a2, b, levels), lin) <= 1e-12);
  }
}

TEST_CASE("trace laws") {
  fixtures::Sampler rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = rng.dyadic(16), n = rng.uniform(1, 6);
    const int levels = static_cast<int>(rng.uniform(1, max_levels(p)));
    const Tensor3 a = rng.tensor(n, n, p), b = rng.tensor(n, n, p);
    const double ab = trace(w_product(a, b, levels)), ba = trace(w_product(b, a, levels));
    CHECK(std::abs(ab - ba) <= 1e-10 * std::max(1.0, std::abs(ab)));
    const double atb = trace(w_product(transpose(a), b, levels));
    const double abt = trace(w_product(a, transpose(b), levels));
    CHECK(std::abs(atb - abt) <= 1e-10 * std::max(1.0, std::abs(atb)));
    CHECK(trace(a) == doctest::Approx(trace(transpose(a))).epsilon(1e-14));
  }
}

TEST_CASE("inverse reversal") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Tensor3 a = fixtures::well_conditioned(3, 8, 3, seed), b = fixtures::well_conditioned(3, 8, 3, seed + 100);
    const Tensor3 lhs = inverse_tensor(w_product(a, b, 3), 3);
    const Tensor3 rhs = w_product(inverse_tensor(b, 3), inverse_tensor(a, 3), 3);
    CHECK(rel(lhs, rhs) <= 1e-8);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const Tensor3 a = Tensor3::random_uniform(40, 30, 64, 1, -1, 1);
  const Tensor3 b = Tensor3::random_uniform(30, 20, 64, 2, -1, 1);
  set_thread_count(1);
  const Tensor3 one = w_product(a, b, 6);
  set_thread_count(4);
  const Tensor3 four = w_product(a, b, 6);
  set_thread_count(0);
  CHECK(fixtures::bitwise_equal(one, four));
}
