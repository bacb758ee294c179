#include "fixtures.hpp"
#include "wten/error.hpp"
#include "wten/lifting.hpp"

#include <doctest.h>

using namespace wten;
namespace ex = fixtures::worked;

TEST_CASE("max levels") {
  CHECK(max_levels(96) == 5);
  CHECK(max_levels(102) == 1);
  CHECK(max_levels(204) == 2);
  CHECK(max_levels(144) == 4);
  CHECK(max_levels(7) == 0);
  CHECK(max_levels(1) == 0);
  CHECK(max_levels(1024) == 10);
}

TEST_CASE("level validation") {
  const Tensor3 t(2, 2, 12);
  CHECK_THROWS_AS(forward_w(t, 3), LevelError);
  CHECK_THROWS_AS(forward_w(t, 0), LevelError);
  CHECK_NOTHROW(forward_w(t, 2));
  CHECK_THROWS_AS(forward_w(Tensor3(2, 2, 7), 1), LevelError);
}

TEST_CASE("forward transform of the worked example") {
  const WaveletPyramid one = forward_w(ex::a(), 1);
  REQUIRE(one.levels() == 1);
  for (Index k = 0; k < 2; ++k) {
    CHECK(fixtures::max_diff(one.smooth.slice(k), ex::a_s1()[k]) == 0.0);
    CHECK(fixtures::max_diff(one.detail(1).slice(k), ex::a_d1()[k]) == 0.0);
  }
  const WaveletPyramid two = forward_w(ex::a(), 2);
  CHECK(two.smooth.slices() == 1);
  CHECK(two.detail(1).slices() == 2);
  CHECK(two.detail(2).slices() == 1);
  CHECK(fixtures::max_diff(two.smooth.slice(0), ex::a_s2()) == 0.0);
  CHECK(fixtures::max_diff(two.detail(2).slice(0), ex::a_d2()) == 0.0);

  const WaveletPyramid b = forward_w(ex::b(), 2);
  CHECK(fixtures::max_diff(b.smooth.slice(0), ex::b_s2()) == 0.0);
  CHECK(fixtures::max_diff(b.detail(2).slice(0), ex::b_d2()) == 0.0);
  for (Index k = 0; k < 2; ++k) CHECK(fixtures::max_diff(b.detail(1).slice(k), ex::b_d1()[k]) == 0.0);
}

TEST_CASE("constant tube has no detail") {
  Tensor3 t(1, 1, 2);
  t(0, 0, 0) = t(0, 0, 1) = 3.25;
  const WaveletPyramid pyr = forward_w(t, 1);
  CHECK(pyr.detail(1)(0, 0, 0) == 0.0);
  CHECK(pyr.smooth(0, 0, 0) == 3.25);
}

TEST_CASE("inverse transform") {
  SUBCASE("scalar tube") {
    WaveletPyramid pyr = WaveletPyramid::zeros(1, 1, 2, 1);
    pyr.smooth(0, 0, 0) = 1;
    pyr.detail(1)(0, 0, 0) = 1;
    const Tensor3 t = inverse_w(pyr);
    CHECK(t(0, 0, 0) == 1.5);
    CHECK(t(0, 0, 1) == 0.5);
  }
  SUBCASE("worked example output") {
    WaveletPyramid pyr = WaveletPyramid::zeros(2, 2, 4, 2);
    pyr.smooth.slice(0) = ex::c_s2();
    pyr.detail(2).slice(0) = ex::c_d2();
    pyr.detail(1).slice(0) = ex::c_d1()[0];
    pyr.detail(1).slice(1) = ex::c_d1()[1];
    const Tensor3 c = inverse_w(pyr);
    for (Index k = 0; k < 4; ++k) CHECK(fixtures::max_diff(c.slice(k), ex::c()[k]) == 0.0);
  }
  SUBCASE("inconsistent pyramid") {
    WaveletPyramid pyr = WaveletPyramid::zeros(2, 2, 8, 2);
    pyr.details[0] = Tensor3(2, 2, 3);
    CHECK_THROWS_AS(inverse_w(pyr), ShapeError);
    WaveletPyramid bad = WaveletPyramid::zeros(2, 2, 8, 2);
    bad.smooth = Tensor3(2, 3, 2);
    CHECK_THROWS_AS(inverse_w(bad), ShapeError);
  }
}

TEST_CASE("perfect reconstruction") {
  const Tensor3 t = Tensor3::random_uniform(8, 8, 16, 21, -1, 1);
  for (int levels = 1; levels <= 4; ++levels) {
    CHECK(distance(inverse_w(forward_w(t, levels)), t) <= 1e-12 * frobenius_norm(t));
  }
}

TEST_CASE("linearity") {
  fixtures::Sampler rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index p = rng.dyadic(32);
    const int levels = static_cast<int>(rng.uniform(1, max_levels(p)));
    const Tensor3 f = rng.tensor(3, 4, p), g = rng.tensor(3, 4, p);
    const double alpha = rng.real(-2, 2), beta = rng.real(-2, 2);
    const WaveletPyramid lhs = forward_w(alpha * f + beta * g, levels);
    const WaveletPyramid wf = forward_w(f, levels), wg = forward_w(g, levels);
    WaveletPyramid rhs = wf;
    rhs.smooth = alpha * wf.smooth + beta * wg.smooth;
    for (int j = 1; j <= levels; ++j) rhs.detail(j) = alpha * wf.detail(j) + beta * wg.detail(j);
    CHECK(distance(lhs, rhs) <= 1e-12 * frobenius_norm(rhs));
  }
}

TEST_CASE("transpose commutes with the transform") {
  const Tensor3 t = Tensor3::random_uniform(3, 5, 24, 8);
  const WaveletPyramid a = forward_w(transpose(t), 3);
  const WaveletPyramid b = transpose(forward_w(t, 3));
  CHECK(a.smooth == b.smooth);
  for (int j = 1; j <= 3; ++j) CHECK(a.detail(j) == b.detail(j));
}

TEST_CASE("pyramid bookkeeping") {
  const WaveletPyramid pyr = WaveletPyramid::zeros(2, 3, 24, 3);
  CHECK(pyr.signal_length() == 24);
  CHECK(pyr.coarse_slices() == 3);
  Index total = pyr.smooth.slices();
  for (int j = 1; j <= 3; ++j) {
    CHECK(pyr.detail(j).slices() == (24 >> j));
    total += pyr.detail(j).slices();
  }
  CHECK(total == 24);
  const auto ids = pyr.block_ids();
  CHECK(ids.size() == 24);
  CHECK(ids.front() == BlockId{BlockKind::detail, 1, 0});
  CHECK(ids.back() == BlockId{BlockKind::smooth, 3, 2});
  CHECK(pyr.coarse_block_ids().size() == 6);
}

TEST_CASE("fine detail energy ratio") {
  Tensor3 constant(2, 2, 8);
  for (double& v : constant.data()) v = 1.0;
  CHECK(fine_detail_energy_ratio(forward_w(constant, 3)) == 0.0);
  CHECK(fine_detail_energy_ratio(forward_w(Tensor3::random_uniform(2, 2, 8, 1), 1)) == 0.0);
  const double r = fine_detail_energy_ratio(forward_w(Tensor3::random_uniform(4, 4, 16, 1, -1, 1), 3));
  CHECK(r > 0.1);
  CHECK(r < 1.0);
}

TEST_CASE("coarse-only transform matches the full pyramid") {
  fixtures::Sampler s(91);
  for (int trial = 0; trial < 20; ++trial) {
    const Index p = s.dyadic(32);
    const int levels = static_cast<int>(s.uniform(1, max_levels(p)));
    const Tensor3 t = s.tensor(s.uniform(1, 5), s.uniform(1, 5), p);
    const WaveletPyramid full = forward_w(t, levels);
    const CoarseBlocks coarse = forward_w_coarse(t, levels);
    CHECK(coarse.levels == levels);
    CHECK(fixtures::bitwise_equal(coarse.smooth, full.smooth));
    CHECK(fixtures::bitwise_equal(coarse.detail, full.detail(levels)));

    WaveletPyramid zeroed = WaveletPyramid::zeros(t.rows(), t.cols(), p, levels);
    zeroed.smooth = full.smooth;
    zeroed.detail(levels) = full.detail(levels);
    CHECK(fixtures::max_diff(inverse_w_coarse(coarse), inverse_w(zeroed)) == 0.0);
  }
  CHECK_THROWS_AS(forward_w_coarse(Tensor3(2, 2, 6), 2), LevelError);
  CHECK_THROWS_AS(inverse_w_coarse({Tensor3(2, 2, 1), Tensor3(2, 3, 1), 1}), ShapeError);
}
