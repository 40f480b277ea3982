#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balltrack/patching.hpp"

namespace balltrack
{

/// 8-bit image, row-major, interleaved channels (1 = gray, 3 = RGB).
struct Image
{
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0);

  FrameDims dims() const { return {width, height}; }
  bool empty() const { return data.empty(); }
  std::size_t stride() const { return std::size_t(width) * channels; }

  std::uint8_t & at(int x, int y, int c = 0) { return data[y * stride() + std::size_t(x) * channels + c]; }
  std::uint8_t at(int x, int y, int c = 0) const { return data[y * stride() + std::size_t(x) * channels + c]; }

  friend bool operator==(const Image &, const Image &) = default;
};

class ImageIoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Copy of the window region. The window must lie inside the image.
Image crop(const Image & image, const CropWindow & window);

/// Luminance conversion (0.299 R + 0.587 G + 0.114 B); gray input is copied.
Image to_gray(const Image & image);

std::vector<std::uint8_t> encode_png(const Image & image);
Image decode_png(std::span<const std::uint8_t> bytes);

void write_png(const std::filesystem::path & path, const Image & image);
Image read_png(const std::filesystem::path & path);

}  // namespace balltrack
