#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "balltrack/blob_detector.hpp"
#include "balltrack/oracle_detector.hpp"
#include "balltrack/synth.hpp"
#include "balltrack/tracker.hpp"

namespace balltrack::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Bad arguments or inputs that contradict them. Maps to exit code 2.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SynthOptions
{
  std::string kind = "swing";
  std::filesystem::path out;
  synth::SwingParams swing;
  synth::PuttParams putt;
};

struct AugmentOptions
{
  std::filesystem::path image;
  BBox bbox;
  int shift = kDefaultAugmentShift;
  int size = kDefaultPatchSize;
  std::filesystem::path out;
};

struct TrackOptions
{
  std::filesystem::path sequence;
  std::filesystem::path out;  ///< defaults to <sequence>/results.csv
  std::string detector = "blob";
  OracleNoise oracle;
  BlobConfig blob;
  int extern_timeout_ms = 5000;
  TrackerConfig tracker;
  double q_pos = kalman::kDefaultQPos;
  double q_vel = kalman::kDefaultQVel;
  double r_pos = kalman::kDefaultRPos;
  std::optional<Point2> init;  ///< nullopt: frame 0 annotation
};

struct EvalOptions
{
  std::string mode = "track";
  std::vector<std::filesystem::path> results;
  std::vector<std::filesystem::path> annotations;
  std::vector<double> cle_thresholds{1.0, 2.0, 5.0};
  std::vector<double> iou_thresholds;  ///< added to 0.25 and 0.5 in detect mode
  std::optional<std::filesystem::path> curves_dir;
  int jobs = 1;
  bool color = false;
};

int cmd_synth(const SynthOptions & opt, std::ostream & out);
int cmd_augment(const AugmentOptions & opt, std::ostream & out);
int cmd_track(const TrackOptions & opt, std::ostream & out, std::ostream & err);
int cmd_eval(const EvalOptions & opt, std::ostream & out);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, char ** argv);

}  // namespace balltrack::cli
