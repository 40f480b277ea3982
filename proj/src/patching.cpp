#include "balltrack/patching.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace balltrack
{

bool CropWindow::contains(const BBox & b) const
{
  return b.x >= x && b.y >= y && b.right() <= x + size && b.bottom() <= y + size;
}

CropWindow crop_window(const Point2 & predicted_center, const FrameDims & frame, int size)
{
  if (size <= 0) {
    throw std::invalid_argument("crop window size must be positive");
  }
  if (frame.width < size || frame.height < size) {
    throw WindowTooLargeError(
      "frame " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
      " is smaller than the " + std::to_string(size) + "x" + std::to_string(size) +
      " crop window; pad the frame or use a smaller patch size");
  }

  // Round half up so that x.5 always moves right/down.
  const double cx = std::floor(predicted_center.x + 0.5);
  const double cy = std::floor(predicted_center.y + 0.5);
  const double half = size / 2;

  // Clamp in double before converting; a diverged prediction may be huge.
  const double ox = std::clamp(cx - half, 0.0, double(frame.width - size));
  const double oy = std::clamp(cy - half, 0.0, double(frame.height - size));
  return {static_cast<int>(ox), static_cast<int>(oy), size};
}

BBox to_frame(const BBox & b, const CropWindow & w)
{
  return {b.x + w.x, b.y + w.y, b.w, b.h};
}

BBox to_patch(const BBox & b, const CropWindow & w)
{
  return {b.x - w.x, b.y - w.y, b.w, b.h};
}

Detection to_frame(const Detection & d, const CropWindow & w)
{
  return {to_frame(d.bbox, w), d.score};
}

Detection to_patch(const Detection & d, const CropWindow & w)
{
  return {to_patch(d.bbox, w), d.score};
}

std::vector<GridWindow> augment9(const BBox & ball, const FrameDims & frame, int size, int shift)
{
  const Point2 c = center(ball);
  std::vector<GridWindow> out;
  out.reserve(9);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      const Point2 shifted{c.x + (col - 1) * shift, c.y + (row - 1) * shift};
      const CropWindow w = crop_window(shifted, frame, size);
      if (!w.contains(ball)) {
        continue;
      }
      const bool duplicate = std::any_of(
        out.begin(), out.end(), [&](const GridWindow & g) { return g.window == w; });
      if (!duplicate) {
        out.push_back({row, col, w});
      }
    }
  }
  return out;
}

}  // namespace balltrack
