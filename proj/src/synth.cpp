#include "balltrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "balltrack/rng.hpp"

namespace balltrack::synth
{

namespace
{

constexpr int kSuperSamples = 8;  // per axis, per pixel

double deg2rad(double d)
{
  return d * std::numbers::pi / 180.0;
}

void check_common(int frames, const FrameDims & dims, double noise_sigma, int blur_samples)
{
  if (frames < 2) {
    throw std::invalid_argument("a sequence needs at least 2 frames");
  }
  if (dims.width < 1 || dims.height < 1) {
    throw std::invalid_argument("frame dimensions must be positive");
  }
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise_sigma must be non-negative");
  }
  if (blur_samples < 1) {
    throw std::invalid_argument("blur_samples must be at least 1");
  }
}

// Fraction of the pixel [px, px+1) x [py, py+1) covered by the disk,
// estimated on a regular sub-pixel grid.
double coverage(const Disk & d, int px, int py)
{
  const double r2 = d.radius * d.radius;
  int inside = 0;
  for (int sy = 0; sy < kSuperSamples; ++sy) {
    const double y = py + (sy + 0.5) / kSuperSamples - d.center.y;
    for (int sx = 0; sx < kSuperSamples; ++sx) {
      const double x = px + (sx + 0.5) / kSuperSamples - d.center.x;
      inside += (x * x + y * y <= r2) ? 1 : 0;
    }
  }
  return double(inside) / (kSuperSamples * kSuperSamples);
}

}  // namespace

void SwingParams::validate() const
{
  check_common(frames, frame_dims, noise_sigma, blur_samples);
  if (!(r0 >= 2.0)) {
    throw std::invalid_argument("r0 must be at least 2 px");
  }
  if (!(gravity >= 0.0)) {
    throw std::invalid_argument("gravity must be non-negative");
  }
  if (!(depth_rate > 0.0 && depth_rate <= 1.0)) {
    throw std::invalid_argument("depth_rate must be in (0, 1]");
  }
  if (!std::isfinite(v0) || !std::isfinite(angle_deg) || !is_finite(start)) {
    throw std::invalid_argument("swing parameters must be finite");
  }
}

void PuttParams::validate() const
{
  check_common(frames, frame_dims, noise_sigma, blur_samples);
  if (!(friction >= 0.0)) {
    throw std::invalid_argument("friction must be non-negative");
  }
  if (!(v0 >= 0.0)) {
    throw std::invalid_argument("v0 must be non-negative");
  }
  if (!(r >= kMinRadius)) {
    throw std::invalid_argument("ball radius too small");
  }
  if (!std::isfinite(heading_deg) || !is_finite(start)) {
    throw std::invalid_argument("putt parameters must be finite");
  }
}

Disk swing_disk(const SwingParams & p, double t)
{
  const double a = deg2rad(p.angle_deg);
  return {
    {p.start.x + p.v0 * std::cos(a) * t, p.start.y - p.v0 * std::sin(a) * t + 0.5 * p.gravity * t * t},
    std::max(p.r0 * std::pow(p.depth_rate, t), kMinRadius)};
}

double putt_distance(const PuttParams & p, double t)
{
  double moving = t;
  if (p.friction > 0.0) {
    moving = std::min(t, p.v0 / p.friction);
  }
  return p.v0 * moving - 0.5 * p.friction * moving * moving;
}

Disk putt_disk(const PuttParams & p, double t)
{
  const double h = deg2rad(p.heading_deg);
  const double d = putt_distance(p, t);
  return {{p.start.x + d * std::cos(h), p.start.y - d * std::sin(h)}, p.r};
}

std::optional<BBox> disk_bbox(const Disk & d, const FrameDims & frame)
{
  const BBox b = from_center(d.center, 2.0 * d.radius, 2.0 * d.radius);
  if (b.right() <= 0.0 || b.bottom() <= 0.0 || b.x >= frame.width || b.y >= frame.height) {
    return std::nullopt;
  }
  return b;
}

std::optional<BBox> swing_truth(const SwingParams & p, int t)
{
  return disk_bbox(swing_disk(p, t), p.frame_dims);
}

std::optional<BBox> putt_truth(const PuttParams & p, int t)
{
  return disk_bbox(putt_disk(p, t), p.frame_dims);
}

Image render(const std::vector<Disk> & samples, const RenderParams & p, std::int64_t frame_index)
{
  const int W = p.frame_dims.width;
  const int H = p.frame_dims.height;
  std::vector<double> cover(std::size_t(W) * H, 0.0);

  const double weight = samples.empty() ? 0.0 : 1.0 / double(samples.size());
  for (const Disk & d : samples) {
    if (d.radius <= 0.0) {
      continue;
    }
    const int x0 = std::max(0, int(std::floor(d.center.x - d.radius)));
    const int y0 = std::max(0, int(std::floor(d.center.y - d.radius)));
    const int x1 = std::min(W - 1, int(std::floor(d.center.x + d.radius)));
    const int y1 = std::min(H - 1, int(std::floor(d.center.y + d.radius)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        cover[std::size_t(y) * W + x] += weight * coverage(d, x, y);
      }
    }
  }

  Image img(W, H, 1);
  const bool noisy = p.noise_sigma > 0.0;
  Rng rng(stream_seed(p.seed, static_cast<std::uint64_t>(frame_index)));
  for (std::size_t i = 0; i < cover.size(); ++i) {
    double v = kBackground + cover[i] * (kBall - kBackground);
    if (noisy) {
      v += rng.normal(0.0, p.noise_sigma);
    }
    img.data[i] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
  return img;
}

namespace
{

template <typename Params, typename DiskFn>
Image render_frame(const Params & p, int t, DiskFn disk_at)
{
  std::vector<Disk> samples;
  samples.reserve(std::size_t(p.blur_samples));
  for (int k = 0; k < p.blur_samples; ++k) {
    const Disk d = disk_at(p, t + double(k) / p.blur_samples);
    if (disk_bbox(d, p.frame_dims)) {
      samples.push_back(d);
    } else {
      samples.push_back({d.center, 0.0});  // off-frame samples still dilute the average
    }
  }
  return render(samples, RenderParams{p.frame_dims, p.noise_sigma, p.seed}, t);
}

template <typename Params, typename DiskFn>
Sequence generate_impl(const Params & p, DiskFn disk_at)
{
  p.validate();
  Sequence seq;
  seq.frames.reserve(std::size_t(p.frames));
  seq.annotations.reserve(std::size_t(p.frames));
  for (int t = 0; t < p.frames; ++t) {
    seq.frames.push_back(render_frame(p, t, disk_at));
    seq.annotations.push_back(disk_bbox(disk_at(p, double(t)), p.frame_dims));
  }
  return seq;
}

}  // namespace

Image render_swing_frame(const SwingParams & p, int t)
{
  return render_frame(p, t, swing_disk);
}

Image render_putt_frame(const PuttParams & p, int t)
{
  return render_frame(p, t, putt_disk);
}

Sequence generate(const SwingParams & p)
{
  return generate_impl(p, swing_disk);
}

Sequence generate(const PuttParams & p)
{
  return generate_impl(p, putt_disk);
}

}  // namespace balltrack::synth
