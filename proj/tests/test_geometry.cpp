#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "balltrack/geometry.hpp"
#include "oracles.hpp"

using namespace balltrack;

TEST(Geometry, IouIdenticalAndDisjoint)
{
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {20, 20, 5, 5}), 0.0);
}

TEST(Geometry, IouAdjacentIntegerBoxesDoNotOverlap)
{
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {10, 0, 10, 10}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 10, 10, 10}), 0.0);
}

TEST(Geometry, IouOneLabelPixelOnLargeBall)
{
  // 26x26 label on a 27x27 ball sharing the top-left corner.
  const double expected = balltrack::testing::pixel_count_iou({0, 0, 26, 26}, {0, 0, 27, 27});
  EXPECT_DOUBLE_EQ(expected, 676.0 / 729.0);
  EXPECT_NEAR(iou({0, 0, 26, 26}, {0, 0, 27, 27}), 0.927297668, 1e-9);
}

TEST(Geometry, IouMatchesPixelCountingOnRandomBoxes)
{
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const BBox a = balltrack::testing::random_int_box(rng, 30, 20);
    const BBox b = balltrack::testing::random_int_box(rng, 30, 20);
    ASSERT_DOUBLE_EQ(iou(a, b), balltrack::testing::pixel_count_iou(a, b)) << "pair " << i;
  }
}

TEST(Geometry, IouAndCleAreSymmetric)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-50, 50);
  std::uniform_real_distribution<double> side(0.5, 40);
  for (int i = 0; i < 200; ++i) {
    const BBox a{pos(rng), pos(rng), side(rng), side(rng)};
    const BBox b{pos(rng), pos(rng), side(rng), side(rng)};
    const BBox c{pos(rng), pos(rng), side(rng), side(rng)};
    EXPECT_EQ(iou(a, b), iou(b, a));
    EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
    EXPECT_GE(iou(a, b), 0.0);
    EXPECT_LE(iou(a, b), 1.0);
    EXPECT_EQ(cle(a, b), cle(b, a));
    EXPECT_LE(cle(a, c), cle(a, b) + cle(b, c) + 1e-12);
  }
}

TEST(Geometry, CleExamples)
{
  EXPECT_DOUBLE_EQ(cle({3, 3, 4, 4}, {3, 3, 4, 4}), 0.0);
  // centers (0,0) and (3,4)
  EXPECT_DOUBLE_EQ(cle({-1, -1, 2, 2}, {2, 3, 2, 2}), 5.0);
  // centers (12,12) and (14,17)
  EXPECT_NEAR(cle({10, 10, 4, 4}, {13, 16, 2, 2}), std::sqrt(29.0), 1e-12);
}

TEST(Geometry, CenterRoundTrip)
{
  EXPECT_EQ(center({10, 10, 4, 4}), (Point2{12, 12}));
  EXPECT_EQ(from_center({12, 12}, 4, 4), (BBox{10, 10, 4, 4}));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(-1000, 1000);
  for (int i = 0; i < 100; ++i) {
    // Dyadic sizes keep the halving exact.
    const Point2 p{std::round(pos(rng) * 4) / 4, std::round(pos(rng) * 4) / 4};
    EXPECT_EQ(center(from_center(p, 8, 16)), p);
  }
}

TEST(Geometry, Validity)
{
  EXPECT_TRUE(is_valid(BBox{0, 0, 1, 1}));
  EXPECT_FALSE(is_valid(BBox{0, 0, 0, 1}));
  EXPECT_FALSE(is_valid(BBox{0, 0, 1, -1}));
  EXPECT_FALSE(is_valid(BBox{NAN, 0, 1, 1}));
  EXPECT_FALSE(is_valid(Detection{{0, 0, 1, 1}, 1.5}));
  EXPECT_TRUE(is_valid(Detection{{0, 0, 1, 1}, 0.0}));
}

TEST(Geometry, LabelErrorSensitivity)
{
  // Corner-aligned one-pixel size error.
  EXPECT_NEAR(1.0 - iou({0, 0, 26, 26}, {0, 0, 27, 27}), 0.0727, 1e-4);
  EXPECT_NEAR(1.0 - iou({0, 0, 5, 5}, {0, 0, 6, 6}), 0.3056, 1e-4);
  // One-pixel center shift of a 6x6 box: 30/42 overlap.
  EXPECT_NEAR(1.0 - iou({0, 0, 6, 6}, {1, 0, 6, 6}), 1.0 - 30.0 / 42.0, 1e-12);
}
