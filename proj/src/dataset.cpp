#include "balltrack/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace balltrack::dataset
{

namespace fs = std::filesystem;

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view s)
{
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

BBox parse_box(const std::vector<std::string_view> & f, std::size_t first)
{
  BBox b{parse_double(f[first]), parse_double(f[first + 1]), parse_double(f[first + 2]),
         parse_double(f[first + 3])};
  if (!is_valid(b)) {
    throw FormatError("invalid box (width and height must be positive)");
  }
  return b;
}

template <typename Row, typename Parse>
std::vector<Row> read_rows(std::istream & is, const std::string & source, std::string_view header, Parse parse)
{
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) {
      continue;
    }
    if (!seen_header) {
      if (t != header) {
        throw FormatError(source + ":" + std::to_string(lineno) + ": expected header '" +
                          std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    try {
      rows.push_back(parse(t));
    } catch (const FormatError & e) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!seen_header) {
    throw FormatError(source + ": missing header '" + std::string(header) + "'");
  }
  return rows;
}

std::ifstream open_in(const fs::path & path)
{
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return f;
}

std::ofstream open_out(const fs::path & path)
{
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return f;
}

}  // namespace

std::string format_double(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw FormatError("cannot format number");
  }
  return std::string(buf, ptr);
}

double parse_double(std::string_view s)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw FormatError("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

std::string serialize(const AnnotationRow & row)
{
  return std::to_string(row.frame) + "," + format_double(row.bbox.x) + "," + format_double(row.bbox.y) +
         "," + format_double(row.bbox.w) + "," + format_double(row.bbox.h);
}

std::string serialize(const ResultRow & row)
{
  return std::to_string(row.frame) + "," + format_double(row.bbox.x) + "," + format_double(row.bbox.y) +
         "," + format_double(row.bbox.w) + "," + format_double(row.bbox.h) + "," +
         format_double(row.score) + "," + to_string(row.status) + "," + format_double(row.elapsed_ms);
}

AnnotationRow parse_annotation(std::string_view line)
{
  const auto f = split(line);
  if (f.size() != 5) {
    throw FormatError("expected 5 fields, got " + std::to_string(f.size()));
  }
  return {parse_int(f[0]), parse_box(f, 1)};
}

ResultRow parse_result(std::string_view line)
{
  const auto f = split(line);
  if (f.size() != 8) {
    throw FormatError("expected 8 fields, got " + std::to_string(f.size()));
  }
  const auto status = parse_status(f[6]);
  if (!status) {
    throw FormatError("unknown status '" + std::string(f[6]) + "'");
  }
  ResultRow r{parse_int(f[0]), parse_box(f, 1), parse_double(f[5]), *status, parse_double(f[7])};
  if (r.score < 0.0 || r.score > 1.0) {
    throw FormatError("score outside [0, 1]");
  }
  if (r.elapsed_ms < 0.0) {
    throw FormatError("negative elapsed time");
  }
  return r;
}

void write_annotations(std::ostream & os, const std::vector<AnnotationRow> & rows)
{
  os << kAnnotationHeader << '\n';
  for (const auto & r : rows) {
    os << serialize(r) << '\n';
  }
}

void write_results(std::ostream & os, const std::vector<ResultRow> & rows)
{
  os << kResultHeader << '\n';
  for (const auto & r : rows) {
    os << serialize(r) << '\n';
  }
}

std::vector<AnnotationRow> read_annotations(std::istream & is, const std::string & source)
{
  return read_rows<AnnotationRow>(is, source, kAnnotationHeader, parse_annotation);
}

std::vector<ResultRow> read_results(std::istream & is, const std::string & source)
{
  return read_rows<ResultRow>(is, source, kResultHeader, parse_result);
}

std::vector<AnnotationRow> read_annotations(const fs::path & path)
{
  auto f = open_in(path);
  return read_annotations(f, path.string());
}

std::vector<ResultRow> read_results(const fs::path & path)
{
  auto f = open_in(path);
  return read_results(f, path.string());
}

void write_annotations(const fs::path & path, const std::vector<AnnotationRow> & rows)
{
  auto f = open_out(path);
  write_annotations(f, rows);
  if (!f) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

void write_results(const fs::path & path, const std::vector<ResultRow> & rows)
{
  auto f = open_out(path);
  write_results(f, rows);
  if (!f) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

std::vector<DetectionRow> read_detections(const fs::path & path)
{
  auto f = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t, std::less<>> col;
  std::vector<DetectionRow> rows;
  while (std::getline(f, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) {
      continue;
    }
    const auto fields = split(t);
    if (col.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        col.emplace(std::string(fields[i]), i);
      }
      for (const char * required : {"frame", "x", "y", "w", "h", "score"}) {
        if (!col.contains(required)) {
          throw FormatError(path.string() + ": header lacks column '" + required + "'");
        }
      }
      continue;
    }
    if (fields.size() != col.size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": wrong field count");
    }
    try {
      if (const auto it = col.find("status"); it != col.end()) {
        if (parse_status(fields[it->second]) != TrackStatus::Tracked) {
          continue;
        }
      }
      DetectionRow r;
      r.frame = parse_int(fields[col.at("frame")]);
      r.detection.bbox = {parse_double(fields[col.at("x")]), parse_double(fields[col.at("y")]),
                          parse_double(fields[col.at("w")]), parse_double(fields[col.at("h")])};
      r.detection.score = parse_double(fields[col.at("score")]);
      if (!is_valid(r.detection)) {
        throw FormatError("invalid detection");
      }
      rows.push_back(r);
    } catch (const FormatError & e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (col.empty()) {
    throw FormatError(path.string() + ": empty file");
  }
  return rows;
}

ResultRow to_row(const TrackRecord & rec)
{
  return {rec.frame_index, rec.output_bbox,
          rec.detection_used ? rec.detection_used->score : 0.0, rec.status, rec.elapsed_ms};
}

std::string frame_filename(std::int64_t index)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06lld.png", static_cast<long long>(index));
  return buf;
}

std::size_t count_frames(const fs::path & dir)
{
  std::size_t n = 0;
  while (fs::exists(dir / frame_filename(std::int64_t(n)))) {
    ++n;
  }
  return n;
}

Image load_frame(const fs::path & dir, std::int64_t index)
{
  return read_png(dir / frame_filename(index));
}

std::vector<std::optional<BBox>> annotations_by_frame(
  const std::vector<AnnotationRow> & rows, std::size_t n_frames)
{
  std::vector<std::optional<BBox>> out(n_frames);
  for (const auto & r : rows) {
    if (r.frame < 0 || std::size_t(r.frame) >= n_frames) {
      throw FormatError("annotation for frame " + std::to_string(r.frame) + " has no frame file");
    }
    if (out[std::size_t(r.frame)]) {
      throw FormatError("duplicate annotation for frame " + std::to_string(r.frame));
    }
    out[std::size_t(r.frame)] = r.bbox;
  }
  return out;
}

void write_sequence(const fs::path & dir, const Sequence & seq)
{
  fs::create_directories(dir);
  std::vector<AnnotationRow> rows;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    write_png(dir / frame_filename(std::int64_t(i)), seq.frames[i]);
    if (i < seq.annotations.size() && seq.annotations[i]) {
      rows.push_back({std::int64_t(i), *seq.annotations[i]});
    }
  }
  write_annotations(dir / kAnnotationsFile, rows);
}

Sequence read_sequence(const fs::path & dir)
{
  Sequence seq;
  const std::size_t n = count_frames(dir);
  for (std::size_t i = 0; i < n; ++i) {
    seq.frames.push_back(load_frame(dir, std::int64_t(i)));
  }
  seq.annotations = annotations_by_frame(read_annotations(dir / kAnnotationsFile), n);
  return seq;
}

}  // namespace balltrack::dataset
