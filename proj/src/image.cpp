#include "balltrack/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace balltrack
{

namespace
{

void check_channels(int channels)
{
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("images must have 1 or 3 channels");
  }
}

// Wraps without copying; callers must not outlive `image`.
cv::Mat as_mat(const Image & image)
{
  return cv::Mat(
    image.height, image.width, image.channels == 1 ? CV_8UC1 : CV_8UC3,
    const_cast<std::uint8_t *>(image.data.data()), image.stride());
}

}  // namespace

Image::Image(int w, int h, int c, std::uint8_t fill)
: width(w), height(h), channels(c)
{
  if (w < 0 || h < 0) {
    throw std::invalid_argument("image dimensions must be non-negative");
  }
  check_channels(c);
  data.assign(std::size_t(w) * h * c, fill);
}

Image crop(const Image & image, const CropWindow & window)
{
  if (window.x < 0 || window.y < 0 || window.x + window.size > image.width ||
      window.y + window.size > image.height) {
    throw std::out_of_range("crop window outside image");
  }
  Image out(window.size, window.size, image.channels);
  const std::size_t row_bytes = out.stride();
  for (int r = 0; r < window.size; ++r) {
    const auto * src = image.data.data() + (window.y + r) * image.stride() +
                       std::size_t(window.x) * image.channels;
    std::memcpy(out.data.data() + r * row_bytes, src, row_bytes);
  }
  return out;
}

Image to_gray(const Image & image)
{
  if (image.channels == 1) {
    return image;
  }
  Image out(image.width, image.height, 1);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double v = 0.299 * image.at(x, y, 0) + 0.587 * image.at(x, y, 1) + 0.114 * image.at(x, y, 2);
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_png(const Image & image)
{
  check_channels(image.channels);
  if (image.width <= 0 || image.height <= 0) {
    throw ImageIoError("cannot encode an empty image");
  }
  cv::Mat mat = as_mat(image);
  cv::Mat bgr;
  if (image.channels == 3) {
    cv::cvtColor(mat, bgr, cv::COLOR_RGB2BGR);
    mat = bgr;
  }
  std::vector<std::uint8_t> buf;
  if (!cv::imencode(".png", mat, buf)) {
    throw ImageIoError("PNG encoding failed");
  }
  return buf;
}

Image decode_png(std::span<const std::uint8_t> bytes)
{
  if (bytes.empty()) {
    throw ImageIoError("empty PNG buffer");
  }
  const cv::Mat raw(1, int(bytes.size()), CV_8UC1, const_cast<std::uint8_t *>(bytes.data()));
  cv::Mat mat = cv::imdecode(raw, cv::IMREAD_UNCHANGED);
  if (mat.empty()) {
    throw ImageIoError("could not decode PNG data");
  }
  if (mat.depth() != CV_8U) {
    throw ImageIoError("only 8-bit PNG images are supported");
  }
  if (mat.channels() == 4) {
    cv::cvtColor(mat, mat, cv::COLOR_BGRA2RGB);
  } else if (mat.channels() == 3) {
    cv::cvtColor(mat, mat, cv::COLOR_BGR2RGB);
  } else if (mat.channels() != 1) {
    throw ImageIoError("unsupported PNG channel count");
  }

  Image out(mat.cols, mat.rows, mat.channels());
  for (int r = 0; r < mat.rows; ++r) {
    std::memcpy(out.data.data() + r * out.stride(), mat.ptr(r), out.stride());
  }
  return out;
}

void write_png(const std::filesystem::path & path, const Image & image)
{
  const auto bytes = encode_png(image);
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ImageIoError("cannot open " + path.string() + " for writing");
  }
  f.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
  if (!f) {
    throw ImageIoError("failed writing " + path.string());
  }
}

Image read_png(const std::filesystem::path & path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw ImageIoError("cannot open " + path.string());
  }
  const std::vector<std::uint8_t> bytes(
    (std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return decode_png(bytes);
  } catch (const ImageIoError & e) {
    throw ImageIoError(path.string() + ": " + e.what());
  }
}

}  // namespace balltrack
