#include "balltrack/geometry.hpp"

#include <algorithm>

namespace balltrack
{

bool is_finite(const Point2 & p)
{
  return std::isfinite(p.x) && std::isfinite(p.y);
}

bool is_valid(const BBox & b)
{
  return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) && std::isfinite(b.h) &&
         b.w > 0.0 && b.h > 0.0;
}

bool is_valid(const Detection & d)
{
  return is_valid(d.bbox) && d.score >= 0.0 && d.score <= 1.0;
}

Point2 center(const BBox & b)
{
  return {b.x + b.w / 2.0, b.y + b.h / 2.0};
}

BBox from_center(const Point2 & c, double w, double h)
{
  return {c.x - w / 2.0, c.y - h / 2.0, w, h};
}

double intersection_area(const BBox & a, const BBox & b)
{
  const double iw = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) {
    return 0.0;
  }
  return iw * ih;
}

double iou(const BBox & a, const BBox & b)
{
  // right() - x does not round-trip to w exactly
  if (a == b && a.area() > 0.0) {
    return 1.0;
  }
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) {
    return 0.0;
  }
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double distance(const Point2 & a, const Point2 & b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

double cle(const BBox & a, const BBox & b)
{
  return distance(center(a), center(b));
}

}  // namespace balltrack
