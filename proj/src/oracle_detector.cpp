#include "balltrack/oracle_detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "balltrack/rng.hpp"

namespace balltrack
{

namespace
{

constexpr double kMinSide = 1.0;
constexpr double kFpMinSide = 4.0;
constexpr double kFpMaxSide = 32.0;

}  // namespace

bool OracleNoise::valid() const
{
  return p_detect >= 0.0 && p_detect <= 1.0 && sigma_center >= 0.0 && sigma_size >= 0.0 &&
         fp_rate >= 0.0;
}

std::vector<Detection> oracle_detect(
  int patch_width, int patch_height, const std::optional<BBox> & truth, const OracleNoise & noise,
  std::int64_t frame_index)
{
  if (!noise.valid()) {
    throw std::invalid_argument("invalid oracle noise parameters");
  }

  Rng rng(stream_seed(noise.seed, static_cast<std::uint64_t>(frame_index)));
  std::vector<Detection> out;

  // Draw order is fixed so that outputs depend only on (seed, frame).
  const bool hit = rng.bernoulli(noise.p_detect);
  const double dx = rng.normal(0.0, noise.sigma_center);
  const double dy = rng.normal(0.0, noise.sigma_center);
  const double sw = 1.0 + rng.normal(0.0, noise.sigma_size);
  const double sh = 1.0 + rng.normal(0.0, noise.sigma_size);
  const double score = rng.uniform(0.7, 1.0);

  if (hit && truth) {
    // Keep the center fixed while resizing; written so zero noise reproduces
    // the truth box bit for bit.
    const double w = std::max(truth->w * sw, kMinSide);
    const double h = std::max(truth->h * sh, kMinSide);
    const BBox noisy{
      truth->x + dx + (truth->w - w) / 2.0, truth->y + dy + (truth->h - h) / 2.0, w, h};
    if (auto clipped = clip_to(noisy, patch_width, patch_height)) {
      out.push_back({*clipped, score});
    }
  }

  const int n_fp = rng.poisson(noise.fp_rate);
  for (int i = 0; i < n_fp; ++i) {
    const double side = rng.uniform(kFpMinSide, kFpMaxSide);
    const double x = rng.uniform(0.0, patch_width - side);
    const double y = rng.uniform(0.0, patch_height - side);
    const double s = rng.uniform(0.1, 0.7);
    if (auto clipped = clip_to({x, y, side, side}, patch_width, patch_height)) {
      out.push_back({*clipped, s});
    }
  }

  sort_by_score(out);
  return out;
}

OracleDetector::OracleDetector(OracleNoise noise)
: noise_(noise)
{
  if (!noise_.valid()) {
    throw std::invalid_argument("invalid oracle noise parameters");
  }
}

std::vector<Detection> OracleDetector::detect(const Image & patch, const DetectionContext & ctx)
{
  return oracle_detect(patch.width, patch.height, ctx.truth, noise_, ctx.frame_index);
}

}  // namespace balltrack
