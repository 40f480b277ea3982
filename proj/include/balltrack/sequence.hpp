#pragma once

#include <optional>
#include <vector>

#include "balltrack/geometry.hpp"
#include "balltrack/image.hpp"

namespace balltrack
{

/// Ordered frames with per-frame ground truth. `annotations[i]` is empty when
/// the ball is not visible in frame i.
struct Sequence
{
  std::vector<Image> frames;
  std::vector<std::optional<BBox>> annotations;
  double fps_nominal = 30.0;

  std::size_t size() const { return frames.size(); }
};

}  // namespace balltrack
