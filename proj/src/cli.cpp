#include "balltrack/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"

#include "balltrack/dataset.hpp"
#include "balltrack/extern_detector.hpp"
#include "balltrack/metrics.hpp"

namespace balltrack::cli
{

namespace fs = std::filesystem;

namespace
{

std::vector<double> parse_list(const std::string & text, std::size_t expected, const char * what)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(dataset::parse_double(item));
    } catch (const dataset::FormatError &) {
      throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw UsageError(std::string("expected ") + std::to_string(expected) + " comma-separated values for " +
                     what + ", got '" + text + "'");
  }
  return out;
}

std::string pct(double v)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << 100.0 * v << '%';
  return os.str();
}

std::string fixed(double v, int digits)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::unique_ptr<Detector> make_detector(const TrackOptions & opt)
{
  if (opt.detector == "blob") {
    return std::make_unique<BlobDetector>(opt.blob);
  }
  if (opt.detector == "oracle") {
    if (!opt.oracle.valid()) {
      throw UsageError("invalid oracle noise parameters");
    }
    return std::make_unique<OracleDetector>(opt.oracle);
  }
  constexpr std::string_view kExtern = "extern:";
  if (opt.detector.starts_with(kExtern)) {
    const std::string command = opt.detector.substr(kExtern.size());
    if (command.empty()) {
      throw UsageError("extern detector needs a worker command: extern:<command>");
    }
    if (opt.extern_timeout_ms <= 0) {
      throw UsageError("extern timeout must be positive");
    }
    return ExternDetector::spawn(command, std::chrono::milliseconds(opt.extern_timeout_ms));
  }
  throw UsageError("unknown detector '" + opt.detector + "' (blob, oracle, extern:<command>)");
}

}  // namespace

// ---------------------------------------------------------------------------
// synth

int cmd_synth(const SynthOptions & opt, std::ostream & out)
{
  if (opt.out.empty()) {
    throw UsageError("--out is required");
  }
  Sequence seq;
  try {
    if (opt.kind == "swing") {
      seq = synth::generate(opt.swing);
    } else if (opt.kind == "putt") {
      seq = synth::generate(opt.putt);
    } else {
      throw UsageError("unknown sequence kind '" + opt.kind + "' (swing, putt)");
    }
  } catch (const std::invalid_argument & e) {
    throw UsageError(e.what());
  }

  dataset::write_sequence(opt.out, seq);

  std::size_t annotated = 0;
  double min_side = 0.0;
  double max_side = 0.0;
  for (const auto & a : seq.annotations) {
    if (!a) {
      continue;
    }
    min_side = annotated == 0 ? a->w : std::min(min_side, a->w);
    max_side = annotated == 0 ? a->w : std::max(max_side, a->w);
    ++annotated;
  }
  out << "wrote " << seq.size() << " frames to " << opt.out.string() << " (" << annotated
      << " annotated)";
  if (annotated > 0) {
    out << ", ball size " << fixed(max_side, 1) << " -> " << fixed(min_side, 1) << " px";
  }
  out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// augment

int cmd_augment(const AugmentOptions & opt, std::ostream & out)
{
  if (opt.out.empty()) {
    throw UsageError("--out is required");
  }
  if (opt.shift < 0) {
    throw UsageError("--shift must be non-negative");
  }
  if (opt.size <= 0) {
    throw UsageError("--size must be positive");
  }
  const Image image = read_png(opt.image);
  if (!is_valid(opt.bbox) || opt.bbox.x < 0 || opt.bbox.y < 0 || opt.bbox.right() > image.width ||
      opt.bbox.bottom() > image.height)
  {
    throw UsageError("ball box lies outside the " + std::to_string(image.width) + "x" +
                     std::to_string(image.height) + " image");
  }

  std::vector<GridWindow> windows;
  try {
    windows = augment9(opt.bbox, image.dims(), opt.size, opt.shift);
  } catch (const WindowTooLargeError & e) {
    throw UsageError(e.what());
  }

  fs::create_directories(opt.out);
  std::ofstream csv(opt.out / "patches.csv");
  if (!csv) {
    throw std::runtime_error("cannot write " + (opt.out / "patches.csv").string());
  }
  csv << "patch,origin_x,origin_y,x,y,w,h\n";
  for (const auto & g : windows) {
    const std::string name = "patch_" + std::to_string(g.row) + std::to_string(g.col) + ".png";
    write_png(opt.out / name, crop(image, g.window));
    const BBox local = to_patch(opt.bbox, g.window);
    csv << name << ',' << g.window.x << ',' << g.window.y << ',' << dataset::format_double(local.x) << ','
        << dataset::format_double(local.y) << ',' << dataset::format_double(local.w) << ','
        << dataset::format_double(local.h) << '\n';
  }
  if (!csv) {
    throw std::runtime_error("failed writing patches.csv");
  }
  out << "wrote " << windows.size() << " patches of " << opt.size << "x" << opt.size << " to "
      << opt.out.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// track

int cmd_track(const TrackOptions & opt, std::ostream & out, std::ostream & err)
{
  const std::size_t n = dataset::count_frames(opt.sequence);
  if (n == 0) {
    throw std::runtime_error("no frames (frame_000000.png ...) in " + opt.sequence.string());
  }

  std::vector<std::optional<BBox>> truth(n);
  const fs::path ann_path = opt.sequence / dataset::kAnnotationsFile;
  if (fs::exists(ann_path)) {
    truth = dataset::annotations_by_frame(dataset::read_annotations(ann_path), n);
  }

  Point2 init_center;
  if (opt.init) {
    init_center = *opt.init;
  } else if (truth[0]) {
    init_center = center(*truth[0]);
  } else {
    throw UsageError("--init-from-gt needs an annotation for frame 0 in " + ann_path.string());
  }

  TrackerConfig config = opt.tracker;
  try {
    config.kalman = kalman::default_cv_params(opt.q_pos, opt.q_vel, opt.r_pos);
  } catch (const std::invalid_argument & e) {
    throw UsageError(e.what());
  }
  if (config.patch_size <= 0 || config.max_coast < 0) {
    throw UsageError("patch size must be positive and max coast non-negative");
  }

  auto detector = make_detector(opt);
  Tracker tracker(config);
  tracker.set_warning_sink([&err](std::int64_t frame, const std::string & msg) {
    err << "warning: frame " << frame << ": " << msg << '\n';
  });

  std::vector<TrackRecord> records;
  std::vector<TrackRecord> processed;
  records.reserve(n);
  try {
    const Image first = dataset::load_frame(opt.sequence, 0);
    if (init_center.x < 0 || init_center.y < 0 || init_center.x >= first.width || init_center.y >= first.height) {
      throw UsageError("initial position lies outside the frame");
    }
    records.push_back(tracker.init(first, init_center, *detector, truth[0], 0));
    processed.push_back(records.back());
    for (std::size_t i = 1; i < n; ++i) {
      if (tracker.lost()) {
        if (config.stop_on_lost) {
          break;
        }
        records.push_back(tracker.lost_record(std::int64_t(i)));
        continue;
      }
      records.push_back(tracker.step(dataset::load_frame(opt.sequence, std::int64_t(i)), *detector, truth[i]));
      processed.push_back(records.back());
    }
  } catch (const WindowTooLargeError & e) {
    throw UsageError(e.what());
  }

  std::vector<dataset::ResultRow> rows;
  rows.reserve(records.size());
  std::map<TrackStatus, std::size_t> counts;
  for (const auto & r : records) {
    rows.push_back(dataset::to_row(r));
    ++counts[r.status];
  }
  const fs::path out_path = opt.out.empty() ? opt.sequence / dataset::kResultsFile : opt.out;
  dataset::write_results(out_path, rows);

  out << "tracked " << records.size() << " frames with " << detector->name() << ": "
      << counts[TrackStatus::Tracked] << " tracked, " << counts[TrackStatus::Coasting] << " coasting, "
      << counts[TrackStatus::Lost] << " lost\n";
  try {
    out << "mean fps: " << fixed(metrics::fps(processed), 2) << '\n';
  } catch (const metrics::MetricsError &) {
    out << "mean fps: n/a\n";
  }
  out << "results: " << out_path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

namespace
{

struct TrackEval
{
  std::string name;
  std::vector<metrics::TrackedFrame> frames;
  std::optional<double> fps;
};

TrackEval eval_track_one(const fs::path & results, const fs::path & annotations)
{
  const auto rows = dataset::read_results(results);
  const auto gts = dataset::read_annotations(annotations);
  std::map<std::int64_t, BBox> gt_by_frame;
  for (const auto & g : gts) {
    gt_by_frame[g.frame] = g.bbox;
  }

  TrackEval ev;
  ev.name = results.parent_path().filename().string();
  if (ev.name.empty()) {
    ev.name = results.filename().string();
  }
  std::size_t processed = 0;
  double total_ms = 0.0;
  for (const auto & r : rows) {
    if (r.elapsed_ms > 0.0) {
      ++processed;
      total_ms += r.elapsed_ms;
    }
    const auto it = gt_by_frame.find(r.frame);
    if (it != gt_by_frame.end()) {
      ev.frames.push_back({r.bbox, it->second, r.status == TrackStatus::Lost});
    }
  }
  if (ev.frames.empty()) {
    throw std::runtime_error(
      "no overlapping frames between " + results.string() + " and " + annotations.string());
  }
  if (total_ms > 0.0) {
    ev.fps = metrics::fps(processed, total_ms);
  }
  return ev;
}

std::vector<metrics::ImageDetections> detection_images(const fs::path & results, const fs::path & annotations)
{
  std::map<std::int64_t, metrics::ImageDetections> by_frame;
  for (const auto & g : dataset::read_annotations(annotations)) {
    by_frame[g.frame].ground_truth.push_back(g.bbox);
  }
  for (const auto & d : dataset::read_detections(results)) {
    by_frame[d.frame].predictions.push_back(d.detection);
  }
  std::vector<metrics::ImageDetections> out;
  for (auto & [frame, img] : by_frame) {
    out.push_back(std::move(img));
  }
  return out;
}

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int jobs, Fn fn)
{
  std::vector<T> out(n);
  const std::size_t batch = std::max(1, jobs);
  for (std::size_t start = 0; start < n; start += batch) {
    std::vector<std::future<T>> futures;
    for (std::size_t i = start; i < std::min(n, start + batch); ++i) {
      futures.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, fn, i));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      out[start + i] = futures[i].get();
    }
  }
  return out;
}

void write_curves(const fs::path & dir, const std::vector<metrics::TrackedFrame> & frames)
{
  fs::create_directories(dir);
  const auto success = metrics::success_curve(frames);
  std::ofstream s(dir / "success_curve.csv");
  s << "theta,success\n";
  for (std::size_t i = 0; i < success.thresholds.size(); ++i) {
    s << fixed(success.thresholds[i], 2) << ',' << dataset::format_double(success.success[i]) << '\n';
  }

  std::vector<double> px;
  for (int t = 0; t <= 50; ++t) {
    px.push_back(t);
  }
  const auto precision = metrics::precision_curve(frames, px);
  std::ofstream p(dir / "precision_curve.csv");
  p << "threshold_px,precision\n";
  for (const auto & [t, v] : precision) {
    p << dataset::format_double(t) << ',' << dataset::format_double(v) << '\n';
  }
  if (!s || !p) {
    throw std::runtime_error("failed writing curves to " + dir.string());
  }
}

}  // namespace

int cmd_eval(const EvalOptions & opt, std::ostream & out)
{
  if (opt.results.empty() || opt.results.size() != opt.annotations.size()) {
    throw UsageError("give one --annotations file per --results file");
  }
  if (opt.jobs < 1) {
    throw UsageError("--jobs must be at least 1");
  }
  const char * bold = opt.color ? "\x1b[1m" : "";
  const char * reset = opt.color ? "\x1b[0m" : "";

  if (opt.mode == "track") {
    for (const double t : opt.cle_thresholds) {
      if (!(t >= 0.0)) {
        throw UsageError("CLE thresholds must be non-negative");
      }
    }
    const auto evals = parallel_map<TrackEval>(opt.results.size(), opt.jobs, [&](std::size_t i) {
      return eval_track_one(opt.results[i], opt.annotations[i]);
    });

    out << bold << std::left << std::setw(20) << "sequence" << std::setw(8) << "frames";
    for (const double t : opt.cle_thresholds) {
      out << std::setw(9) << ("CLE_" + dataset::format_double(t));
    }
    out << std::setw(9) << "AUC" << "fps" << reset << '\n';

    auto print_row = [&](const std::string & name, const std::vector<metrics::TrackedFrame> & frames,
                         const std::optional<double> & fps) {
      const auto prec = metrics::precision_curve(frames, opt.cle_thresholds);
      const auto succ = metrics::success_curve(frames);
      out << std::left << std::setw(20) << name << std::setw(8) << frames.size();
      for (const double t : opt.cle_thresholds) {
        out << std::setw(9) << pct(prec.at(t));
      }
      out << std::setw(9) << fixed(succ.auc, 4) << (fps ? fixed(*fps, 2) : std::string("n/a")) << '\n';
    };

    std::vector<metrics::TrackedFrame> pooled;
    std::vector<double> fps_values;
    for (const auto & ev : evals) {
      print_row(ev.name, ev.frames, ev.fps);
      pooled.insert(pooled.end(), ev.frames.begin(), ev.frames.end());
      if (ev.fps) {
        fps_values.push_back(*ev.fps);
      }
    }
    if (evals.size() > 1) {
      std::optional<double> avg_fps;
      if (!fps_values.empty()) {
        double sum = 0.0;
        for (const double f : fps_values) {
          sum += f;
        }
        avg_fps = sum / double(fps_values.size());
      }
      print_row("Overall", pooled, avg_fps);
    }

    const auto succ = metrics::success_curve(pooled);
    out << "success curve:";
    for (std::size_t i = 0; i < succ.success.size(); ++i) {
      out << ' ' << fixed(succ.thresholds[i], 2) << '=' << fixed(succ.success[i], 3);
    }
    out << '\n';
    if (opt.curves_dir) {
      write_curves(*opt.curves_dir, pooled);
      out << "curves: " << opt.curves_dir->string() << '\n';
    }
    return kExitOk;
  }

  if (opt.mode == "detect") {
    std::set<double> thresholds{0.25, 0.5};
    for (const double t : opt.iou_thresholds) {
      if (!(t > 0.0 && t < 1.0)) {
        throw UsageError("IoU thresholds must lie in (0, 1)");
      }
      thresholds.insert(t);
    }
    const auto per_seq = parallel_map<std::vector<metrics::ImageDetections>>(
      opt.results.size(), opt.jobs,
      [&](std::size_t i) { return detection_images(opt.results[i], opt.annotations[i]); });

    out << bold << std::left << std::setw(20) << "sequence";
    for (const double t : thresholds) {
      out << std::setw(10) << ("AP-" + std::to_string(int(std::lround(t * 100))));
    }
    out << reset << '\n';

    auto print_row = [&](const std::string & name, const std::vector<metrics::ImageDetections> & images) {
      out << std::left << std::setw(20) << name;
      for (const double t : thresholds) {
        out << std::setw(10) << pct(metrics::average_precision(images, t));
      }
      out << '\n';
    };

    std::vector<metrics::ImageDetections> pooled;
    for (std::size_t i = 0; i < per_seq.size(); ++i) {
      std::string name = opt.results[i].parent_path().filename().string();
      print_row(name.empty() ? opt.results[i].filename().string() : name, per_seq[i]);
      pooled.insert(pooled.end(), per_seq[i].begin(), per_seq[i].end());
    }
    if (per_seq.size() > 1) {
      print_row("Overall", pooled);
    }
    return kExitOk;
  }

  throw UsageError("unknown eval mode '" + opt.mode + "' (track, detect)");
}

// ---------------------------------------------------------------------------
// argument parsing

namespace
{

// Plain `key=value` config lines address the subcommand being run; explicit
// [section] or dotted keys keep their own target.
class SubcommandConfig : public CLI::ConfigINI
{
public:
  explicit SubcommandConfig(std::string target) : target_(std::move(target)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream & input) const override
  {
    auto items = CLI::ConfigINI::from_config(input);
    if (!target_.empty()) {
      for (auto & item : items) {
        if (item.parents.empty()) {
          item.parents = {target_};
        }
      }
    }
    return items;
  }

private:
  std::string target_;
};

// First positional token, skipping the value of --config.
std::string find_subcommand(int argc, char ** argv)
{
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (a == "--config") {
      ++i;
      continue;
    }
    if (!a.empty() && a.front() != '-') {
      return std::string(a);
    }
  }
  return {};
}

}  // namespace

int run(int argc, char ** argv)
{
  CLI::App app{"Small-object tracking by detection: Kalman-predicted patch cropping"};
  app.name("balltrack");
  app.require_subcommand(1);
  app.fallthrough();  // lets --config follow the subcommand
  app.set_config("--config", "", "Read options from a key=value file (flags take precedence)");
  app.config_formatter(std::make_shared<SubcommandConfig>(find_subcommand(argc, argv)));

  // synth
  SynthOptions synth_opt;
  std::string start_text;
  std::string dims_text;
  double v0 = -1.0;
  double noise = 0.0;
  int blur = 1;
  int frames = 50;
  std::uint64_t synth_seed = 0;
  auto * synth_cmd = app.add_subcommand("synth", "Generate a synthetic golf sequence");
  synth_cmd->add_option("--kind", synth_opt.kind, "swing or putt")->capture_default_str();
  synth_cmd->add_option("--out", synth_opt.out, "Output sequence directory")->required();
  synth_cmd->add_option("--frames", frames, "Number of frames")->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Noise seed")->capture_default_str();
  synth_cmd->add_option("--size", dims_text, "Frame size WIDTH,HEIGHT (default 1920,1080)");
  synth_cmd->add_option("--start", start_text, "Initial ball center X,Y");
  synth_cmd->add_option("--v0", v0, "Launch speed, px/frame");
  synth_cmd->add_option("--noise", noise, "Gaussian noise sigma, gray levels")->capture_default_str();
  synth_cmd->add_option("--blur", blur, "Motion blur samples per frame")->capture_default_str();
  synth_cmd->add_option("--angle", synth_opt.swing.angle_deg, "Swing: launch angle, degrees")->capture_default_str();
  synth_cmd->add_option("--gravity", synth_opt.swing.gravity, "Swing: px/frame^2")->capture_default_str();
  synth_cmd->add_option("--depth-rate", synth_opt.swing.depth_rate, "Swing: per-frame size multiplier")
    ->capture_default_str();
  synth_cmd->add_option("--r0", synth_opt.swing.r0, "Swing: initial radius, px")->capture_default_str();
  synth_cmd->add_option("--heading", synth_opt.putt.heading_deg, "Putt: heading, degrees")->capture_default_str();
  synth_cmd->add_option("--friction", synth_opt.putt.friction, "Putt: deceleration, px/frame^2")
    ->capture_default_str();
  synth_cmd->add_option("--radius", synth_opt.putt.r, "Putt: ball radius, px")->capture_default_str();

  // augment
  AugmentOptions aug_opt;
  std::string aug_bbox;
  auto * aug_cmd = app.add_subcommand("augment", "Cut the 3x3 grid of shifted training patches around a ball");
  aug_cmd->add_option("--image", aug_opt.image, "Input PNG")->required();
  aug_cmd->add_option("--bbox", aug_bbox, "Ball box X,Y,W,H")->required();
  aug_cmd->add_option("--shift", aug_opt.shift, "Grid shift, px")->capture_default_str();
  aug_cmd->add_option("--size", aug_opt.size, "Patch side, px")->capture_default_str();
  aug_cmd->add_option("--out", aug_opt.out, "Output directory")->required();

  // track
  TrackOptions track_opt;
  std::string init_text;
  std::string policy = "nearest";
  bool init_from_gt = false;
  auto * track_cmd = app.add_subcommand("track", "Track the ball through a sequence directory");
  track_cmd->add_option("sequence", track_opt.sequence, "Sequence directory")->required();
  track_cmd->add_option("--out", track_opt.out, "Results CSV (default <sequence>/results.csv)");
  track_cmd->add_option("--detector", track_opt.detector, "blob, oracle or extern:<command>")
    ->capture_default_str();
  auto * init_opt = track_cmd->add_option("--init", init_text, "Initial center X,Y");
  track_cmd->add_flag("--init-from-gt", init_from_gt, "Initialize from frame 0's annotation (default)")
    ->excludes(init_opt);
  track_cmd->add_option("--patch-size", track_opt.tracker.patch_size, "Crop window side, px")->capture_default_str();
  track_cmd->add_option("--max-coast", track_opt.tracker.max_coast, "Frames without detection before LOST")
    ->capture_default_str();
  track_cmd->add_option("--policy", policy, "Detection selection: nearest or highest")->capture_default_str();
  track_cmd->add_option("--min-score", track_opt.tracker.min_score, "Ignore detections below this score")
    ->capture_default_str();
  track_cmd->add_flag("--stop-on-lost", track_opt.tracker.stop_on_lost, "Stop at the first LOST frame");
  track_cmd->add_option("--q-pos", track_opt.q_pos, "Process noise, position variance")->capture_default_str();
  track_cmd->add_option("--q-vel", track_opt.q_vel, "Process noise, velocity variance")->capture_default_str();
  track_cmd->add_option("--r-pos", track_opt.r_pos, "Measurement noise variance")->capture_default_str();
  track_cmd->add_option("--p-detect", track_opt.oracle.p_detect, "Oracle: detection probability")
    ->capture_default_str();
  track_cmd->add_option("--sigma-center", track_opt.oracle.sigma_center, "Oracle: center noise, px")
    ->capture_default_str();
  track_cmd->add_option("--sigma-size", track_opt.oracle.sigma_size, "Oracle: relative size noise")
    ->capture_default_str();
  track_cmd->add_option("--fp-rate", track_opt.oracle.fp_rate, "Oracle: false positives per patch")
    ->capture_default_str();
  track_cmd->add_option("--seed", track_opt.oracle.seed, "Oracle: seed")->capture_default_str();
  track_cmd->add_option("--min-area", track_opt.blob.min_area, "Blob: min area, px^2")->capture_default_str();
  track_cmd->add_option("--max-area", track_opt.blob.max_area, "Blob: max area, px^2")->capture_default_str();
  track_cmd->add_option("--min-circularity", track_opt.blob.min_circularity, "Blob: min 4*pi*A/P^2")
    ->capture_default_str();
  track_cmd->add_option("--min-contrast", track_opt.blob.min_contrast, "Blob: min class-mean gap")
    ->capture_default_str();
  track_cmd->add_option("--extern-timeout-ms", track_opt.extern_timeout_ms, "Extern: per-request timeout")
    ->capture_default_str();

  // eval
  EvalOptions eval_opt;
  std::vector<fs::path> eval_seqs;
  std::string cle_text;
  std::string iou_text;
  std::string curves;
  auto * eval_cmd = app.add_subcommand("eval", "Score tracking results or detections against annotations");
  eval_cmd->add_option("--mode", eval_opt.mode, "track or detect")->capture_default_str();
  eval_cmd->add_option("--seq", eval_seqs, "Sequence directory holding results.csv and annotations.csv");
  eval_cmd->add_option("--results", eval_opt.results, "Results or detections CSV");
  eval_cmd->add_option("--annotations", eval_opt.annotations, "Annotations CSV");
  eval_cmd->add_option("--cle", cle_text, "CLE thresholds, px (default 1,2,5)");
  eval_cmd->add_option("--iou", iou_text, "Extra IoU thresholds for detect mode");
  eval_cmd->add_option("--curves", curves, "Write success/precision curve CSVs into this directory");
  eval_cmd->add_option("--jobs", eval_opt.jobs, "Sequences evaluated in parallel")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth_cmd) {
      synth_opt.swing.frames = synth_opt.putt.frames = frames;
      synth_opt.swing.seed = synth_opt.putt.seed = synth_seed;
      synth_opt.swing.noise_sigma = synth_opt.putt.noise_sigma = noise;
      synth_opt.swing.blur_samples = synth_opt.putt.blur_samples = blur;
      if (!dims_text.empty()) {
        const auto d = parse_list(dims_text, 2, "--size");
        if (d[0] < 1 || d[1] < 1 || d[0] != std::floor(d[0]) || d[1] != std::floor(d[1])) {
          throw UsageError("--size needs positive integers");
        }
        synth_opt.swing.frame_dims = synth_opt.putt.frame_dims = {int(d[0]), int(d[1])};
      }
      if (!start_text.empty()) {
        const auto s = parse_list(start_text, 2, "--start");
        synth_opt.swing.start = synth_opt.putt.start = {s[0], s[1]};
      }
      if (v0 >= 0.0) {
        synth_opt.swing.v0 = synth_opt.putt.v0 = v0;
      }
      return cmd_synth(synth_opt, std::cout);
    }
    if (*aug_cmd) {
      const auto b = parse_list(aug_bbox, 4, "--bbox");
      aug_opt.bbox = {b[0], b[1], b[2], b[3]};
      return cmd_augment(aug_opt, std::cout);
    }
    if (*track_cmd) {
      if (!init_text.empty()) {
        const auto p = parse_list(init_text, 2, "--init");
        track_opt.init = Point2{p[0], p[1]};
      }
      if (policy == "nearest") {
        track_opt.tracker.select_policy = SelectPolicy::NearestToPrediction;
      } else if (policy == "highest") {
        track_opt.tracker.select_policy = SelectPolicy::HighestScore;
      } else {
        throw UsageError("unknown --policy '" + policy + "' (nearest, highest)");
      }
      return cmd_track(track_opt, std::cout, std::cerr);
    }
    if (*eval_cmd) {
      for (const auto & s : eval_seqs) {
        eval_opt.results.push_back(s / dataset::kResultsFile);
        eval_opt.annotations.push_back(s / dataset::kAnnotationsFile);
      }
      if (!cle_text.empty()) {
        eval_opt.cle_thresholds = parse_list(cle_text, 0, "--cle");
      }
      if (!iou_text.empty()) {
        eval_opt.iou_thresholds = parse_list(iou_text, 0, "--iou");
      }
      if (!curves.empty()) {
        eval_opt.curves_dir = curves;
      }
      eval_opt.color = std::getenv("NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO);
      return cmd_eval(eval_opt, std::cout);
    }
  } catch (const UsageError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace balltrack::cli
