#pragma once

#include "balltrack/detector.hpp"

namespace balltrack
{

struct BlobConfig
{
  double min_area = 9.0;         ///< px²
  double max_area = 2000.0;      ///< px²
  double min_circularity = 0.6;  ///< 4πA/P²
  /// Minimum gap between the mean gray levels of the two Otsu classes.
  /// Below this the patch is treated as having no foreground.
  double min_contrast = 40.0;
};

/// Otsu threshold on the luminance image.
/// Returns the threshold t (foreground is > t) and the means of both classes.
struct OtsuResult
{
  double threshold = 0.0;
  double background_mean = 0.0;
  double foreground_mean = 0.0;
  bool has_foreground = false;
};
OtsuResult otsu(const Image & gray);

/// Bright-blob detector: Otsu binarization, 8-connected components, area and
/// circularity filtering. One detection per surviving component with the
/// component's pixel bounds and score = min(circularity, 1).
std::vector<Detection> blob_detect(const Image & patch, const BlobConfig & config = {});

class BlobDetector : public Detector
{
public:
  explicit BlobDetector(BlobConfig config = {}) : config_(config) {}

  std::vector<Detection> detect(const Image & patch, const DetectionContext &) override
  {
    return blob_detect(patch, config_);
  }
  std::string name() const override { return "blob"; }

private:
  BlobConfig config_;
};

}  // namespace balltrack
