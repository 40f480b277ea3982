#include "balltrack/tracker.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

#include "balltrack/extern_detector.hpp"
#include "balltrack/sequence.hpp"

namespace balltrack
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char * to_string(TrackStatus s)
{
  switch (s) {
    case TrackStatus::Tracked: return "TRACKED";
    case TrackStatus::Coasting: return "COASTING";
    case TrackStatus::Lost: return "LOST";
  }
  return "?";
}

std::optional<TrackStatus> parse_status(std::string_view s)
{
  if (s == "TRACKED") {
    return TrackStatus::Tracked;
  }
  if (s == "COASTING") {
    return TrackStatus::Coasting;
  }
  if (s == "LOST") {
    return TrackStatus::Lost;
  }
  return std::nullopt;
}

Tracker::Tracker(TrackerConfig config)
: config_(std::move(config))
{
  if (config_.patch_size <= 0) {
    throw std::invalid_argument("patch_size must be positive");
  }
  if (config_.max_coast < 0) {
    throw std::invalid_argument("max_coast must be non-negative");
  }
}

std::vector<Detection> Tracker::detect_in(
  const Image & frame, const CropWindow & window, Detector & detector,
  const std::optional<BBox> & truth, std::int64_t frame_index)
{
  DetectionContext ctx;
  ctx.frame_index = frame_index;
  ctx.window = window;
  if (truth) {
    ctx.truth = clip_to(to_patch(*truth, window), window.size, window.size);
  }

  std::vector<Detection> patch_dets;
  try {
    patch_dets = detector.detect(crop(frame, window), ctx);
  } catch (const DetectorError & e) {
    if (warn_) {
      warn_(frame_index, std::string("detector ") + to_string(e.kind()) + ": " + e.what());
    }
    return {};
  }

  std::vector<Detection> out;
  out.reserve(patch_dets.size());
  for (const auto & d : patch_dets) {
    if (d.score >= config_.min_score) {
      out.push_back(to_frame(d, window));
    }
  }
  return out;
}

std::optional<Detection> Tracker::select(const std::vector<Detection> & dets, const Point2 & anchor) const
{
  if (dets.empty()) {
    return std::nullopt;
  }
  if (config_.select_policy == SelectPolicy::HighestScore) {
    const Detection * best = &dets.front();
    for (const auto & d : dets) {
      if (d.score > best->score) {
        best = &d;
      }
    }
    return *best;
  }

  // Nearest; ties go to the higher score, then to the earlier detection.
  const Detection * best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto & d : dets) {
    const double dist = distance(center(d.bbox), anchor);
    if (best == nullptr || dist < best_dist || (dist == best_dist && d.score > best->score)) {
      best = &d;
      best_dist = dist;
    }
  }
  return *best;
}

TrackRecord Tracker::init(
  const Image & frame, const Point2 & init_center, Detector & detector,
  const std::optional<BBox> & truth, std::int64_t frame_index)
{
  const auto start = Clock::now();
  if (init_center.x < 0 || init_center.y < 0 || init_center.x >= frame.width ||
      init_center.y >= frame.height)
  {
    throw std::invalid_argument("initial center lies outside the frame");
  }

  const CropWindow window = crop_window(init_center, frame.dims(), config_.patch_size);
  const auto dets = detect_in(frame, window, detector, truth, frame_index);
  const auto chosen = select(dets, init_center);

  TrackRecord rec;
  rec.frame_index = frame_index;
  rec.window = window;
  coast_ = 0;
  if (chosen) {
    state_ = kalman::initial_state(center(chosen->bbox));
    last_w_ = chosen->bbox.w;
    last_h_ = chosen->bbox.h;
    status_ = TrackStatus::Tracked;
    rec.output_bbox = chosen->bbox;
    rec.detection_used = chosen;
  } else {
    state_ = kalman::initial_state(init_center);
    last_w_ = truth ? truth->w : config_.default_box_size;
    last_h_ = truth ? truth->h : config_.default_box_size;
    status_ = TrackStatus::Coasting;
    rec.output_bbox = from_center(init_center, last_w_, last_h_);
  }
  rec.state = state_;
  rec.status = status_;

  last_output_ = rec.output_bbox;
  last_window_ = window;
  frame_index_ = frame_index;
  initialized_ = true;
  rec.elapsed_ms = ms_since(start);
  return rec;
}

TrackRecord Tracker::step(const Image & frame, Detector & detector, const std::optional<BBox> & truth)
{
  const auto start = Clock::now();
  if (!initialized_) {
    throw std::logic_error("Tracker::step called before init");
  }
  if (lost()) {
    throw std::logic_error("Tracker::step called on a lost track");
  }
  ++frame_index_;

  const kalman::KalmanState prior = kalman::time_update(state_, config_.kalman);
  const Point2 predicted = prior.position();
  const CropWindow window = crop_window(predicted, frame.dims(), config_.patch_size);
  const auto dets = detect_in(frame, window, detector, truth, frame_index_);
  const auto chosen = select(dets, predicted);

  TrackRecord rec;
  rec.frame_index = frame_index_;
  rec.window = window;
  if (chosen) {
    state_ = kalman::measurement_update(prior, kalman::to_measurement(center(chosen->bbox)), config_.kalman);
    last_w_ = chosen->bbox.w;
    last_h_ = chosen->bbox.h;
    coast_ = 0;
    status_ = TrackStatus::Tracked;
    rec.output_bbox = chosen->bbox;
    rec.detection_used = chosen;
  } else {
    state_ = prior;
    ++coast_;
    status_ = coast_ > config_.max_coast ? TrackStatus::Lost : TrackStatus::Coasting;
    rec.output_bbox = from_center(predicted, last_w_, last_h_);
  }
  rec.state = state_;
  rec.status = status_;

  last_output_ = rec.output_bbox;
  last_window_ = window;
  rec.elapsed_ms = ms_since(start);
  return rec;
}

TrackRecord Tracker::lost_record(std::int64_t frame_index) const
{
  TrackRecord rec;
  rec.frame_index = frame_index;
  rec.output_bbox = last_output_;
  rec.state = state_;
  rec.status = TrackStatus::Lost;
  rec.window = last_window_;
  return rec;
}

std::vector<TrackRecord> run(
  const Sequence & sequence, Detector & detector, const TrackerConfig & config,
  const Point2 & init_center, const WarningSink & warn)
{
  if (sequence.frames.empty()) {
    throw std::invalid_argument("cannot track an empty sequence");
  }
  auto truth_at = [&](std::size_t i) -> std::optional<BBox> {
    return i < sequence.annotations.size() ? sequence.annotations[i] : std::nullopt;
  };

  Tracker tracker(config);
  tracker.set_warning_sink(warn);

  std::vector<TrackRecord> records;
  records.reserve(sequence.size());
  records.push_back(tracker.init(sequence.frames[0], init_center, detector, truth_at(0), 0));
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    if (tracker.lost()) {
      if (config.stop_on_lost) {
        break;
      }
      records.push_back(tracker.lost_record(static_cast<std::int64_t>(i)));
      continue;
    }
    records.push_back(tracker.step(sequence.frames[i], detector, truth_at(i)));
  }
  return records;
}

}  // namespace balltrack
