#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "balltrack/geometry.hpp"
#include "balltrack/tracker.hpp"

namespace balltrack::metrics
{

class MetricsError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Detections and ground truth for one image.
struct ImageDetections
{
  std::vector<Detection> predictions;
  std::vector<BBox> ground_truth;
};

/// Average precision at one IoU threshold, single class.
///
/// Detections from all images are ranked by descending score (stable in
/// input order). Each claims the unmatched ground truth of its own image with
/// the highest IoU if that IoU >= iou_threshold. AP integrates the
/// monotone precision envelope over recall (all-point interpolation).
/// Throws MetricsError when there is no ground truth at all.
double average_precision(const std::vector<ImageDetections> & images, double iou_threshold);

/// One frame of tracker output paired with its ground truth.
struct TrackedFrame
{
  BBox output;
  BBox truth;
  bool lost = false;  ///< scored as IoU 0 and infinite CLE
};

double frame_iou(const TrackedFrame & f);
double frame_cle(const TrackedFrame & f);

/// Fraction of frames with CLE <= threshold, for each threshold.
std::map<double, double> precision_curve(
  const std::vector<TrackedFrame> & frames, const std::vector<double> & thresholds_px);

inline constexpr int kSuccessSamples = 21;

struct SuccessCurve
{
  std::vector<double> thresholds;  ///< 0.00, 0.05, ..., 1.00
  std::vector<double> success;     ///< fraction of frames with IoU > threshold
  double auc = 0.0;                ///< mean of `success`
};

SuccessCurve success_curve(const std::vector<TrackedFrame> & frames);

/// Frames per second over the records' summed per-frame time. Records with
/// no elapsed time (repeated after a loss) are not counted as frames.
double fps(const std::vector<TrackRecord> & records);
double fps(std::size_t frames, double total_ms);

/// Per-sequence fps and their plain average.
struct FpsSummary
{
  std::vector<double> per_sequence;
  double average = 0.0;
};
FpsSummary fps_summary(const std::vector<std::vector<TrackRecord>> & sequences);

/// Pairs records with annotations by frame index. Frames with no annotation
/// are skipped; Lost records are kept and flagged.
std::vector<TrackedFrame> pair_frames(
  const std::vector<TrackRecord> & records, const std::vector<std::optional<BBox>> & annotations);

}  // namespace balltrack::metrics
