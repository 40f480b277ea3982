#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "balltrack/blob_detector.hpp"
#include "balltrack/sequence.hpp"
#include "balltrack/synth.hpp"

using namespace balltrack;
using namespace balltrack::synth;

TEST(Swing, StartsAtStartWithFullRadius)
{
  const SwingParams p;
  const Disk d = swing_disk(p, 0.0);
  EXPECT_EQ(d.center, p.start);
  EXPECT_EQ(d.radius, p.r0);
  EXPECT_EQ(*swing_truth(p, 0), from_center(p.start, 30, 30));
}

TEST(Swing, ApexHeight)
{
  SwingParams p;
  p.angle_deg = 60;
  p.v0 = 20;
  p.gravity = 0.8;
  const double vy = p.v0 * std::sin(60 * std::numbers::pi / 180);
  const double t_apex = vy / p.gravity;
  const double apex_y = p.start.y - vy * vy / (2 * p.gravity);
  EXPECT_NEAR(swing_disk(p, t_apex).center.y, apex_y, 1e-9);
  EXPECT_GT(swing_disk(p, t_apex - 0.5).center.y, apex_y);
  EXPECT_GT(swing_disk(p, t_apex + 0.5).center.y, apex_y);
}

TEST(Swing, DegenerateMotionStaysPut)
{
  SwingParams p;
  p.v0 = 0;
  p.gravity = 0;
  p.depth_rate = 1.0;
  for (int t = 0; t < 10; ++t) {
    EXPECT_EQ(swing_disk(p, t).center, p.start);
    EXPECT_EQ(swing_disk(p, t).radius, p.r0);
  }
}

TEST(Swing, RadiusFloor)
{
  SwingParams p;
  p.depth_rate = 0.5;
  EXPECT_EQ(swing_disk(p, 40).radius, kMinRadius);
}

TEST(Swing, DefaultSizesShrinkFrom30Px)
{
  const SwingParams p;
  const Sequence s = generate(p);
  ASSERT_EQ(s.size(), 50u);
  EXPECT_DOUBLE_EQ(s.annotations.front()->w, 30.0);
  double prev = 1e9;
  for (const auto & a : s.annotations) {
    ASSERT_TRUE(a);
    EXPECT_LT(a->w, prev);
    EXPECT_EQ(a->w, a->h);
    prev = a->w;
  }
  EXPECT_NEAR(s.annotations.back()->w, 30.0 * std::pow(0.9734, 49), 1e-9);
  EXPECT_GE(s.annotations.back()->w, 6.0);
}

TEST(Putt, NoFrictionIsUniformLine)
{
  PuttParams p;
  p.friction = 0;
  p.heading_deg = 30;
  const double c = std::cos(30 * std::numbers::pi / 180);
  const double s = std::sin(30 * std::numbers::pi / 180);
  for (int t = 0; t < 20; ++t) {
    const Disk d = putt_disk(p, t);
    EXPECT_NEAR(d.center.x, p.start.x + p.v0 * t * c, 1e-9);
    EXPECT_NEAR(d.center.y, p.start.y - p.v0 * t * s, 1e-9);
  }
}

TEST(Putt, StopsAndStays)
{
  const PuttParams p;
  const double t_stop = p.v0 / p.friction;
  const Point2 rest = putt_disk(p, t_stop).center;
  for (double t = t_stop; t < t_stop + 20; t += 0.5) {
    EXPECT_EQ(putt_disk(p, t).center, rest);
  }
  EXPECT_LT(putt_disk(p, t_stop - 1).center.x, rest.x);
}

TEST(Putt, TotalDistanceMatchesIntegratedSpeed)
{
  const PuttParams p;
  // Independent check: integrate the speed max(v0 - f t, 0) numerically.
  const double dt = 1e-4;
  double dist = 0.0;
  for (double t = 0.0; t < 100.0; t += dt) {
    dist += std::max(p.v0 - p.friction * (t + dt / 2), 0.0) * dt;
  }
  EXPECT_NEAR(dist, p.v0 * p.v0 / (2 * p.friction), 1e-3);
  EXPECT_NEAR(putt_distance(p, 100.0), dist, 1.0);
  EXPECT_NEAR(putt_disk(p, 100.0).center.x - p.start.x, dist, 1.0);
}

TEST(Render, AbsentBallGivesPlainBackground)
{
  const Image img = render({}, RenderParams{{64, 48}, 0.0, 0}, 0);
  for (auto v : img.data) {
    ASSERT_EQ(v, kBackground);
  }
  const Image off = render({Disk{{-100, -100}, 5}}, RenderParams{{64, 48}, 0.0, 0}, 0);
  EXPECT_EQ(off, img);
}

TEST(Render, DiskValues)
{
  const Image img = render({Disk{{32, 24}, 6}}, RenderParams{{64, 48}, 0.0, 0}, 0);
  EXPECT_EQ(img.at(31, 23), kBall);
  EXPECT_EQ(img.at(32, 24), kBall);
  EXPECT_EQ(img.at(0, 0), kBackground);
  EXPECT_EQ(img.at(63, 47), kBackground);
  // Edge pixels are blended.
  int partial = 0;
  for (auto v : img.data) {
    partial += v != kBall && v != kBackground;
  }
  EXPECT_GT(partial, 0);
}

TEST(Render, IntensityMassMatchesDiskArea)
{
  const double r = 7.3;
  const Image img = render({Disk{{40.2, 30.7}, r}}, RenderParams{{80, 60}, 0.0, 0}, 0);
  double mass = 0.0;
  for (auto v : img.data) {
    mass += double(v - kBackground) / (kBall - kBackground);
  }
  EXPECT_NEAR(mass, std::numbers::pi * r * r, 0.02 * std::numbers::pi * r * r);
}

TEST(Render, TruthBoxBoundsTheDisk)
{
  SwingParams p;
  p.frame_dims = {640, 480};
  p.start = {100, 400};
  p.v0 = 12;
  const Sequence s = generate(p);
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto & box = s.annotations[t];
    const Image & img = s.frames[t];
    if (!box) {
      EXPECT_EQ(img, Image(640, 480, 1, kBackground)) << t;
      continue;
    }
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        if (img.at(x, y) != kBackground) {
          ASSERT_GT(x + 1, box->x) << t;
          ASSERT_LT(x, box->right()) << t;
          ASSERT_GT(y + 1, box->y) << t;
          ASSERT_LT(y, box->bottom()) << t;
        }
      }
    }
  }
}

TEST(Render, NoiseStatistics)
{
  const Image img = render({}, RenderParams{{200, 200}, 5.0, 9}, 3);
  double sum = 0.0;
  double sq = 0.0;
  for (auto v : img.data) {
    sum += v;
    sq += double(v) * v;
  }
  const double n = double(img.data.size());
  const double mean = sum / n;
  // Rounding to integers adds 1/12 to the variance.
  EXPECT_NEAR(mean, kBackground, 0.1);
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), std::sqrt(25.0 + 1.0 / 12), 0.1);
  EXPECT_NE(render({}, RenderParams{{200, 200}, 5.0, 9}, 4), img);
  EXPECT_EQ(render({}, RenderParams{{200, 200}, 5.0, 9}, 3), img);
}

TEST(Render, MotionBlurLeavesStreak)
{
  SwingParams p;
  p.frame_dims = {400, 200};
  p.start = {50, 100};
  p.v0 = 30;
  p.angle_deg = 0;
  p.gravity = 0;
  p.depth_rate = 1.0;
  p.r0 = 4;
  p.blur_samples = 8;
  const Image img = render_swing_frame(p, 2);
  const double thr = otsu(img).threshold;
  int min_x = img.width;
  int max_x = -1;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y) > thr) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
      }
    }
  }
  EXPECT_GE(max_x - min_x + 1, 10);
  // The sharp frame is only a disk wide.
  p.blur_samples = 1;
  const Image sharp = render_swing_frame(p, 2);
  int width = 0;
  for (int x = 0; x < sharp.width; ++x) {
    width += sharp.at(x, 100) > thr;
  }
  EXPECT_LE(width, 9);
}

TEST(Sequence, BallLeavesFrame)
{
  SwingParams p;
  p.frame_dims = {640, 480};
  p.start = {100, 240};
  p.v0 = 18.5;
  p.r0 = 5;
  p.gravity = 0;
  p.angle_deg = 0;
  p.depth_rate = 1.0;
  p.frames = 40;
  const Sequence s = generate(p);
  int first_absent = -1;
  for (int t = 0; t < p.frames; ++t) {
    if (!s.annotations[t] && first_absent < 0) {
      first_absent = t;
    }
  }
  EXPECT_EQ(first_absent, 30);
  for (int t = 30; t < p.frames; ++t) {
    EXPECT_FALSE(s.annotations[t]);
    for (auto v : s.frames[t].data) {
      ASSERT_EQ(v, kBackground);
    }
  }
  // Partly visible boxes are kept whole, not clipped.
  ASSERT_TRUE(s.annotations[29]);
  EXPECT_EQ(s.annotations[29]->w, 10.0);
  EXPECT_GT(s.annotations[29]->right(), 640);
}

TEST(Sequence, ByteIdenticalForSameSeed)
{
  SwingParams p;
  p.frame_dims = {320, 240};
  p.start = {40, 200};
  p.v0 = 8;
  p.frames = 10;
  p.noise_sigma = 4.0;
  p.blur_samples = 3;
  p.seed = 12345;
  const Sequence a = generate(p);
  const Sequence b = generate(p);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.frames[i].data, b.frames[i].data);
    EXPECT_EQ(a.annotations[i], b.annotations[i]);
  }
  p.seed = 54321;
  EXPECT_NE(generate(p).frames[0].data, a.frames[0].data);
}

TEST(Validation, RejectsBadParameters)
{
  SwingParams s;
  s.frames = 1;
  EXPECT_THROW(generate(s), std::invalid_argument);
  s = {};
  s.r0 = 1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.depth_rate = 1.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.noise_sigma = -1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.blur_samples = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);

  PuttParams p;
  p.friction = -0.1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.r = 1;
  EXPECT_THROW(generate(p), std::invalid_argument);
}
