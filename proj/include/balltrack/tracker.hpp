#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balltrack/detector.hpp"
#include "balltrack/kalman.hpp"
#include "balltrack/patching.hpp"

namespace balltrack
{

struct Sequence;

enum class TrackStatus
{
  Tracked,   ///< a detection was used this frame
  Coasting,  ///< no usable detection; motion model only
  Lost,      ///< coasted longer than max_coast
};

const char * to_string(TrackStatus s);
std::optional<TrackStatus> parse_status(std::string_view s);

enum class SelectPolicy
{
  HighestScore,
  NearestToPrediction,
};

struct TrackerConfig
{
  int patch_size = kDefaultPatchSize;
  kalman::KalmanParams kalman = kalman::default_cv_params();
  int max_coast = 5;
  SelectPolicy select_policy = SelectPolicy::NearestToPrediction;
  double min_score = 0.25;
  /// Box size reported while coasting before any detection has been seen.
  double default_box_size = 10.0;
  /// Stop run() at the first Lost frame instead of reporting Lost to the end.
  bool stop_on_lost = false;
};

struct TrackRecord
{
  std::int64_t frame_index = 0;
  BBox output_bbox;
  kalman::KalmanState state;
  TrackStatus status = TrackStatus::Coasting;
  std::optional<Detection> detection_used;  ///< frame coordinates
  CropWindow window;
  double elapsed_ms = 0.0;
};

/// Called for detector transport failures (the frame is then a miss).
using WarningSink = std::function<void(std::int64_t frame, const std::string & message)>;

/// Single-object tracker: Kalman prediction picks the crop window, the
/// detector refines the position inside it, and the chosen detection feeds
/// the measurement update.
class Tracker
{
public:
  explicit Tracker(TrackerConfig config);

  /// Runs the detector on a window centered at `init_center` and starts the
  /// filter at the selected detection (or at `init_center` if none).
  /// Throws WindowTooLargeError if the frame cannot hold a patch.
  TrackRecord init(
    const Image & frame, const Point2 & init_center, Detector & detector,
    const std::optional<BBox> & truth = std::nullopt, std::int64_t frame_index = 0);

  /// One predict-crop-detect-update cycle. Must not be called once Lost.
  TrackRecord step(
    const Image & frame, Detector & detector, const std::optional<BBox> & truth = std::nullopt);

  bool initialized() const { return initialized_; }
  bool lost() const { return status_ == TrackStatus::Lost; }
  const kalman::KalmanState & state() const { return state_; }
  int coast_count() const { return coast_; }
  const TrackerConfig & config() const { return config_; }

  void set_warning_sink(WarningSink sink) { warn_ = std::move(sink); }

  /// Record emitted for frames after the track is Lost: no filtering, the
  /// last state and box are repeated.
  TrackRecord lost_record(std::int64_t frame_index) const;

private:
  std::vector<Detection> detect_in(
    const Image & frame, const CropWindow & window, Detector & detector,
    const std::optional<BBox> & truth, std::int64_t frame_index);
  std::optional<Detection> select(const std::vector<Detection> & frame_dets, const Point2 & anchor) const;

  TrackerConfig config_;
  kalman::KalmanState state_;
  TrackStatus status_ = TrackStatus::Coasting;
  int coast_ = 0;
  double last_w_ = 0.0;
  double last_h_ = 0.0;
  BBox last_output_;
  CropWindow last_window_;
  std::int64_t frame_index_ = 0;
  bool initialized_ = false;
  WarningSink warn_;
};

/// Tracks through a whole in-memory sequence, starting at `init_center` on
/// frame 0. The sequence's annotations are passed to the detector context
/// (used only by the oracle detector).
std::vector<TrackRecord> run(
  const Sequence & sequence, Detector & detector, const TrackerConfig & config,
  const Point2 & init_center, const WarningSink & warn = {});

}  // namespace balltrack
