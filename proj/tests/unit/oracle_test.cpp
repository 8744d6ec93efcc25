// Freezes the reference values of the worked examples. Every number here is
// a closed form, checked against the independent oracle only.

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "test_util.hpp"

using testutil::mat;

namespace {

const double kPhi = std::numbers::phi;
const testutil::Matrix kTri = mat({{1, -1}, {-1, 2}});

TEST(Oracle, ClassicalShiftRadiusIsHalf) {
  EXPECT_NEAR(oracle::radius(mat({{0, 1}, {0, 0}})), 0.5, 1e-9);
}

TEST(Oracle, CommutatorExample) {
  const auto t = mat({{1, 0}, {1, 0}});
  const auto s = mat({{1, 1}, {0, 0}});
  EXPECT_NEAR(oracle::a_norm(kTri, t), std::numbers::sqrt2, 1e-12);
  EXPECT_NEAR(oracle::a_radius(kTri, s), kPhi, 1e-7);
  EXPECT_NEAR(oracle::a_radius(kTri, t * s + s * t), 3.5, 1e-7);
}

TEST(Oracle, CartesianVectorExample) {
  const testutil::Matrix t = 0.5 * mat({{1, 0}, {1, 1}});
  oracle::Vector x(2);
  x << (2.0 - std::sqrt(3.0)) / 2.0, (1.0 - std::sqrt(3.0)) / 2.0;
  EXPECT_NEAR(oracle::vec_a_norm(kTri, x), 0.6196568375, 1e-9);
  EXPECT_NEAR(std::pow(oracle::vec_a_norm(kTri, t * x), 2), 0.0469555434, 1e-9);
  const auto sharp = oracle::sharp(kTri, t);
  EXPECT_NEAR(std::pow(oracle::vec_a_norm(kTri, sharp * x), 2), 0.4129809472, 1e-9);
  const testutil::Matrix re = 0.5 * (t + sharp);
  const testutil::Matrix im = (t - sharp) / testutil::cplx(0.0, 2.0);
  EXPECT_NEAR(std::pow(oracle::a_norm(kTri, re), 2), 1.0, 1e-12);
  EXPECT_NEAR(std::pow(oracle::a_norm(kTri, im), 2), 0.25, 1e-12);
  EXPECT_NEAR(oracle::a_radius(kTri, t), 1.0, 1e-7);
}

TEST(Oracle, InterpolatedBuzanoExample) {
  const auto t = mat({{1, 1}, {0, 0}});
  const auto sharp = oracle::sharp(kTri, t);
  EXPECT_LT(testutil::max_abs(sharp - mat({{3, -3}, {2, -2}})), 1e-12);
  const testutil::Matrix sym = sharp * t + t * sharp;
  EXPECT_LT(testutil::max_abs(sym - mat({{8, -2}, {2, 2}})), 1e-12);
  EXPECT_NEAR(oracle::a_norm(kTri, sym), 5.0 + std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(oracle::a_radius(kTri, t), kPhi, 1e-7);
  EXPECT_NEAR(oracle::a_radius(kTri, t * t), kPhi, 1e-7);
}

TEST(Oracle, WeightedPowerExampleNorms) {
  const auto a = mat({{1, 1}, {1, 1}});
  const auto c1 = mat({{0.25, 0}, {0, 0.25}});
  const auto c2 = mat({{1.0 / 12, 1.0 / 12}, {1.0 / 6, 1.0 / 6}});
  EXPECT_TRUE(oracle::in_ba(a, c1));
  EXPECT_TRUE(oracle::in_ba(a, c2));
  EXPECT_NEAR(oracle::a_norm(a, c1), 0.25, 1e-12);
  EXPECT_NEAR(oracle::a_norm(a, c2), 0.25, 1e-12);
  EXPECT_NEAR(oracle::spectral(a * c1), 0.5, 1e-12);
  EXPECT_FALSE(oracle::in_ba(a, mat({{1.5, 1.5}, {0.5, 0}})));
  EXPECT_FALSE(oracle::in_ba(a, mat({{1, 0}, {1, 1}})));
}

TEST(Oracle, PauliCommutator) {
  const auto a = mat({{1, 0}, {0, 0}});
  const testutil::cplx i(0.0, 1.0);
  const auto comm = mat({{2.0 * i, 0}, {0, -2.0 * i}});
  EXPECT_TRUE(oracle::in_ba(a, comm));
  EXPECT_NEAR(oracle::a_radius(a, comm), 2.0, 1e-9);
  EXPECT_FALSE(oracle::in_ba(a, mat({{0, 1}, {1, 0}})));
}

}  // namespace
