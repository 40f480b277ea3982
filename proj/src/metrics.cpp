#include "balltrack/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace balltrack::metrics
{

double average_precision(const std::vector<ImageDetections> & images, double iou_threshold)
{
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw MetricsError("IoU threshold must lie in (0, 1)");
  }

  struct Ranked
  {
    std::size_t image;
    const Detection * det;
  };
  std::vector<Ranked> ranked;
  std::size_t n_gt = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    n_gt += images[i].ground_truth.size();
    for (const auto & d : images[i].predictions) {
      ranked.push_back({i, &d});
    }
  }
  if (n_gt == 0) {
    throw MetricsError("average precision is undefined without ground truth");
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked & a, const Ranked & b) {
    return a.det->score > b.det->score;
  });

  std::vector<std::vector<bool>> claimed(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    claimed[i].assign(images[i].ground_truth.size(), false);
  }

  // Precision/recall after each ranked detection.
  std::vector<double> recall;
  std::vector<double> precision;
  recall.reserve(ranked.size());
  precision.reserve(ranked.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto & gts = images[ranked[k].image].ground_truth;
    auto & used = claimed[ranked[k].image];
    double best = -1.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < gts.size(); ++j) {
      if (used[j]) {
        continue;
      }
      const double o = iou(ranked[k].det->bbox, gts[j]);
      if (o > best) {
        best = o;
        best_j = j;
      }
    }
    if (best >= iou_threshold) {
      used[best_j] = true;
      ++tp;
    }
    recall.push_back(double(tp) / double(n_gt));
    precision.push_back(double(tp) / double(k + 1));
  }

  // Precision envelope, then sum over recall steps.
  std::vector<double> mrec{0.0};
  std::vector<double> mpre{0.0};
  mrec.insert(mrec.end(), recall.begin(), recall.end());
  mpre.insert(mpre.end(), precision.begin(), precision.end());
  mrec.push_back(1.0);
  mpre.push_back(0.0);
  for (std::size_t i = mpre.size() - 1; i > 0; --i) {
    mpre[i - 1] = std::max(mpre[i - 1], mpre[i]);
  }
  double ap = 0.0;
  for (std::size_t i = 1; i < mrec.size(); ++i) {
    ap += (mrec[i] - mrec[i - 1]) * mpre[i];
  }
  return std::clamp(ap, 0.0, 1.0);
}

double frame_iou(const TrackedFrame & f)
{
  return f.lost ? 0.0 : iou(f.output, f.truth);
}

double frame_cle(const TrackedFrame & f)
{
  return f.lost ? std::numeric_limits<double>::infinity() : cle(f.output, f.truth);
}

std::map<double, double> precision_curve(
  const std::vector<TrackedFrame> & frames, const std::vector<double> & thresholds_px)
{
  if (frames.empty()) {
    throw MetricsError("precision needs at least one paired frame");
  }
  std::vector<double> errors;
  errors.reserve(frames.size());
  for (const auto & f : frames) {
    errors.push_back(frame_cle(f));
  }
  std::map<double, double> out;
  for (const double t : thresholds_px) {
    const auto within = std::count_if(errors.begin(), errors.end(), [t](double e) { return e <= t; });
    out[t] = double(within) / double(errors.size());
  }
  return out;
}

SuccessCurve success_curve(const std::vector<TrackedFrame> & frames)
{
  if (frames.empty()) {
    throw MetricsError("success rate needs at least one paired frame");
  }
  std::vector<double> overlaps;
  overlaps.reserve(frames.size());
  for (const auto & f : frames) {
    overlaps.push_back(frame_iou(f));
  }

  SuccessCurve c;
  for (int i = 0; i < kSuccessSamples; ++i) {
    const double theta = i / double(kSuccessSamples - 1);
    const auto hits =
      std::count_if(overlaps.begin(), overlaps.end(), [theta](double o) { return o > theta; });
    c.thresholds.push_back(theta);
    c.success.push_back(double(hits) / double(overlaps.size()));
  }
  c.auc = std::accumulate(c.success.begin(), c.success.end(), 0.0) / kSuccessSamples;
  return c;
}

double fps(std::size_t frames, double total_ms)
{
  if (!(total_ms > 0.0)) {
    throw MetricsError("cannot compute fps: total elapsed time is zero");
  }
  return double(frames) / (total_ms / 1000.0);
}

double fps(const std::vector<TrackRecord> & records)
{
  // Records repeated after the track was lost carry no time and were not processed.
  double total = 0.0;
  std::size_t processed = 0;
  for (const auto & r : records) {
    if (r.elapsed_ms > 0.0) {
      total += r.elapsed_ms;
      ++processed;
    }
  }
  return fps(processed, total);
}

FpsSummary fps_summary(const std::vector<std::vector<TrackRecord>> & sequences)
{
  if (sequences.empty()) {
    throw MetricsError("no sequences to summarize");
  }
  FpsSummary s;
  for (const auto & seq : sequences) {
    s.per_sequence.push_back(fps(seq));
  }
  s.average = std::accumulate(s.per_sequence.begin(), s.per_sequence.end(), 0.0) /
              double(s.per_sequence.size());
  return s;
}

std::vector<TrackedFrame> pair_frames(
  const std::vector<TrackRecord> & records, const std::vector<std::optional<BBox>> & annotations)
{
  std::vector<TrackedFrame> out;
  for (const auto & r : records) {
    if (r.frame_index < 0 || std::size_t(r.frame_index) >= annotations.size()) {
      continue;
    }
    const auto & gt = annotations[std::size_t(r.frame_index)];
    if (!gt) {
      continue;
    }
    out.push_back({r.output_bbox, *gt, r.status == TrackStatus::Lost});
  }
  return out;
}

}  // namespace balltrack::metrics
