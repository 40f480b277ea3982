#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balltrack/geometry.hpp"
#include "balltrack/image.hpp"
#include "balltrack/patching.hpp"

namespace balltrack
{

/// Side information handed to a detector with each patch.
struct DetectionContext
{
  std::int64_t frame_index = 0;
  CropWindow window;
  /// Ground truth in patch coordinates, when known and inside the patch.
  /// Only test doubles look at this.
  std::optional<BBox> truth;
};

/// Detector boundary of the tracking loop.
///
/// detect() returns patch-local detections sorted by descending score, with
/// every box inside the patch and every score in [0, 1]. It may throw
/// DetectorError for transport failures; the tracker treats that as a miss.
class Detector
{
public:
  virtual ~Detector() = default;
  virtual std::vector<Detection> detect(const Image & patch, const DetectionContext & ctx) = 0;
  virtual std::string name() const = 0;
};

/// Returns an empty string when `dets` satisfies the detector contract for a
/// patch of the given size, otherwise a description of the first violation.
std::string check_detector_output(const std::vector<Detection> & dets, int patch_width, int patch_height);

/// Clips to [0, width) x [0, height). Returns nullopt if nothing is left.
std::optional<BBox> clip_to(const BBox & b, double width, double height);

/// Stable sort by descending score.
void sort_by_score(std::vector<Detection> & dets);

}  // namespace balltrack
