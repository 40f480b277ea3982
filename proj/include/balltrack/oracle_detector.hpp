#pragma once

#include <cstdint>

#include "balltrack/detector.hpp"

namespace balltrack
{

struct OracleNoise
{
  double p_detect = 1.0;      ///< probability the true ball is reported
  double sigma_center = 0.0;  ///< px, Gaussian per-axis center noise
  double sigma_size = 0.0;    ///< relative, Gaussian multiplicative size noise
  double fp_rate = 0.0;       ///< expected false positives per patch (Poisson)
  std::uint64_t seed = 0;

  bool valid() const;
};

/// Detections derived from the ground truth. Reproducible per
/// (seed, frame index).
std::vector<Detection> oracle_detect(
  int patch_width, int patch_height, const std::optional<BBox> & truth, const OracleNoise & noise,
  std::int64_t frame_index);

/// Test-double detector reading the truth carried in the DetectionContext.
class OracleDetector : public Detector
{
public:
  explicit OracleDetector(OracleNoise noise);

  std::vector<Detection> detect(const Image & patch, const DetectionContext & ctx) override;
  std::string name() const override { return "oracle"; }

private:
  OracleNoise noise_;
};

}  // namespace balltrack
