#include "balltrack/detector.hpp"

#include <algorithm>
#include <sstream>

namespace balltrack
{

std::string check_detector_output(const std::vector<Detection> & dets, int patch_width, int patch_height)
{
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const Detection & d = dets[i];
    std::ostringstream msg;
    msg << "detection " << i << ": ";
    if (!is_valid(d.bbox)) {
      msg << "invalid box";
      return msg.str();
    }
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      msg << "score " << d.score << " outside [0, 1]";
      return msg.str();
    }
    if (d.bbox.x < 0.0 || d.bbox.y < 0.0 || d.bbox.right() > patch_width ||
        d.bbox.bottom() > patch_height)
    {
      msg << "box outside the " << patch_width << "x" << patch_height << " patch";
      return msg.str();
    }
    if (i > 0 && dets[i - 1].score < d.score) {
      msg << "not sorted by descending score";
      return msg.str();
    }
  }
  return {};
}

std::optional<BBox> clip_to(const BBox & b, double width, double height)
{
  const double x0 = std::max(b.x, 0.0);
  const double y0 = std::max(b.y, 0.0);
  const double x1 = std::min(b.right(), width);
  const double y1 = std::min(b.bottom(), height);
  if (x1 <= x0 || y1 <= y0) {
    return std::nullopt;
  }
  return BBox{x0, y0, x1 - x0, y1 - y0};
}

void sort_by_score(std::vector<Detection> & dets)
{
  std::stable_sort(dets.begin(), dets.end(), [](const Detection & a, const Detection & b) {
    return a.score > b.score;
  });
}

}  // namespace balltrack
