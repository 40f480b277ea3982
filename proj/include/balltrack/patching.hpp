#pragma once

#include <stdexcept>
#include <vector>

#include "balltrack/geometry.hpp"

namespace balltrack
{

inline constexpr int kDefaultPatchSize = 416;
inline constexpr int kDefaultAugmentShift = 100;

struct FrameDims
{
  int width = 0;
  int height = 0;

  friend bool operator==(const FrameDims &, const FrameDims &) = default;
};

/// Square crop window in frame pixels. `x`/`y` is the top-left corner.
struct CropWindow
{
  int x = 0;
  int y = 0;
  int size = kDefaultPatchSize;

  BBox bbox() const { return {double(x), double(y), double(size), double(size)}; }
  bool contains(const BBox & b) const;

  friend bool operator==(const CropWindow &, const CropWindow &) = default;
};

/// The frame cannot hold a window of the requested size.
class WindowTooLargeError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Window of `size` centered on the rounded predicted center, shifted so it
/// lies fully inside the frame.
CropWindow crop_window(const Point2 & predicted_center, const FrameDims & frame, int size = kDefaultPatchSize);

Detection to_frame(const Detection & d, const CropWindow & w);
Detection to_patch(const Detection & d, const CropWindow & w);
BBox to_frame(const BBox & b, const CropWindow & w);
BBox to_patch(const BBox & b, const CropWindow & w);

/// One augmentation window and its position in the 3x3 shift grid.
struct GridWindow
{
  int row = 0;  ///< 0..2, dy = (row - 1) * shift
  int col = 0;  ///< 0..2, dx = (col - 1) * shift
  CropWindow window;
};

/// 3x3 grid of windows centered on the ball shifted by {-shift, 0, +shift}
/// in each axis. Windows are clamped into the frame; those that no longer
/// contain the ball are dropped and duplicate origins are kept once.
/// Row-major order over (dy, dx).
std::vector<GridWindow> augment9(
  const BBox & ball, const FrameDims & frame, int size = kDefaultPatchSize,
  int shift = kDefaultAugmentShift);

}  // namespace balltrack
