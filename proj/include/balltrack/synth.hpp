#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "balltrack/geometry.hpp"
#include "balltrack/image.hpp"
#include "balltrack/patching.hpp"
#include "balltrack/sequence.hpp"

namespace balltrack::synth
{

inline constexpr std::uint8_t kBackground = 96;
inline constexpr std::uint8_t kBall = 230;
inline constexpr double kMinRadius = 1.5;

/// Ballistic flight in the image plane. Apparent radius decays by
/// `depth_rate` per frame as the ball moves away from the camera.
struct SwingParams
{
  Point2 start{300.0, 900.0};
  double v0 = 30.0;          ///< px/frame
  double angle_deg = 45.0;   ///< above horizontal
  double gravity = 0.5;      ///< px/frame², pulls toward +y
  double depth_rate = 0.9734;
  double r0 = 15.0;          ///< px
  int frames = 50;
  FrameDims frame_dims{1920, 1080};
  double noise_sigma = 0.0;  ///< gray levels
  int blur_samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Straight roll decelerating under constant friction until it stops.
struct PuttParams
{
  Point2 start{400.0, 700.0};
  double v0 = 8.0;            ///< px/frame
  double heading_deg = 0.0;   ///< 0 = +x, 90 = up the image
  double friction = 0.2;      ///< px/frame²
  double r = 6.0;             ///< px
  int frames = 50;
  FrameDims frame_dims{1920, 1080};
  double noise_sigma = 0.0;
  int blur_samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Ball center and radius at (possibly fractional) time t.
struct Disk
{
  Point2 center;
  double radius = 0.0;
};

Disk swing_disk(const SwingParams & p, double t);
Disk putt_disk(const PuttParams & p, double t);

/// Distance rolled along the heading by time t.
double putt_distance(const PuttParams & p, double t);

/// Square box of side 2r around the disk, or nullopt if the disk lies
/// entirely outside the frame.
std::optional<BBox> disk_bbox(const Disk & d, const FrameDims & frame);

std::optional<BBox> swing_truth(const SwingParams & p, int t);
std::optional<BBox> putt_truth(const PuttParams & p, int t);

struct RenderParams
{
  FrameDims frame_dims{1920, 1080};
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Renders one frame: background 96 plus seeded Gaussian noise, with the
/// ball drawn as an anti-aliased disk of value 230 averaged over the given
/// sub-frame positions (one sample = no blur).
Image render(const std::vector<Disk> & samples, const RenderParams & p, std::int64_t frame_index);

/// Frame t with blur samples taken at t + k / n, k = 0..n-1.
Image render_swing_frame(const SwingParams & p, int t);
Image render_putt_frame(const PuttParams & p, int t);

Sequence generate(const SwingParams & p);
Sequence generate(const PuttParams & p);

}  // namespace balltrack::synth
