#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "balltrack/geometry.hpp"
#include "balltrack/image.hpp"
#include "balltrack/sequence.hpp"
#include "balltrack/tracker.hpp"

namespace balltrack::dataset
{

/// Malformed file contents. Carries the path and line where possible.
class FormatError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kAnnotationsFile = "annotations.csv";
inline constexpr std::string_view kResultsFile = "results.csv";
inline constexpr std::string_view kAnnotationHeader = "frame,x,y,w,h";
inline constexpr std::string_view kResultHeader = "frame,x,y,w,h,score,status,elapsed_ms";

struct AnnotationRow
{
  std::int64_t frame = 0;
  BBox bbox;

  friend bool operator==(const AnnotationRow &, const AnnotationRow &) = default;
};

struct ResultRow
{
  std::int64_t frame = 0;
  BBox bbox;
  double score = 0.0;
  TrackStatus status = TrackStatus::Tracked;
  double elapsed_ms = 0.0;

  friend bool operator==(const ResultRow &, const ResultRow &) = default;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

std::string serialize(const AnnotationRow & row);
std::string serialize(const ResultRow & row);
AnnotationRow parse_annotation(std::string_view line);
ResultRow parse_result(std::string_view line);

void write_annotations(std::ostream & os, const std::vector<AnnotationRow> & rows);
void write_results(std::ostream & os, const std::vector<ResultRow> & rows);
std::vector<AnnotationRow> read_annotations(std::istream & is, const std::string & source = "<stream>");
std::vector<ResultRow> read_results(std::istream & is, const std::string & source = "<stream>");

std::vector<AnnotationRow> read_annotations(const std::filesystem::path & path);
std::vector<ResultRow> read_results(const std::filesystem::path & path);
void write_annotations(const std::filesystem::path & path, const std::vector<AnnotationRow> & rows);
void write_results(const std::filesystem::path & path, const std::vector<ResultRow> & rows);

/// Detection rows `frame,x,y,w,h,score[,...]`. Rows carrying a status column
/// are kept only when the status is TRACKED.
struct DetectionRow
{
  std::int64_t frame = 0;
  Detection detection;
};
std::vector<DetectionRow> read_detections(const std::filesystem::path & path);

ResultRow to_row(const TrackRecord & rec);

/// `frame_000042.png`
std::string frame_filename(std::int64_t index);

/// Number of consecutive frame files frame_000000.png, frame_000001.png, ...
std::size_t count_frames(const std::filesystem::path & dir);

Image load_frame(const std::filesystem::path & dir, std::int64_t index);

/// Per-frame annotations indexed by frame number, sized to `n_frames`.
std::vector<std::optional<BBox>> annotations_by_frame(
  const std::vector<AnnotationRow> & rows, std::size_t n_frames);

/// Writes frames and annotations.csv into `dir` (created if needed).
void write_sequence(const std::filesystem::path & dir, const Sequence & seq);

/// Loads a whole sequence directory into memory.
Sequence read_sequence(const std::filesystem::path & dir);

}  // namespace balltrack::dataset
