#pragma once

#include <cmath>

namespace balltrack
{

/// A point in image space (origin top-left, x right, y down), in pixels.
struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

/// Axis-aligned box (left, top, width, height). Covers the half-open region
/// [x, x + w) x [y, y + h).
struct BBox
{
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }

  friend bool operator==(const BBox &, const BBox &) = default;
};

/// A detector output: a box plus a confidence in [0, 1].
struct Detection
{
  BBox bbox;
  double score = 0.0;

  friend bool operator==(const Detection &, const Detection &) = default;
};

bool is_finite(const Point2 & p);
bool is_valid(const BBox & b);
bool is_valid(const Detection & d);

Point2 center(const BBox & b);
BBox from_center(const Point2 & c, double w, double h);

/// Area of the intersection of two boxes, 0 when they do not overlap.
double intersection_area(const BBox & a, const BBox & b);

/// Intersection over union.
double iou(const BBox & a, const BBox & b);

/// Center location error: Euclidean distance between box centers.
double cle(const BBox & a, const BBox & b);

double distance(const Point2 & a, const Point2 & b);

}  // namespace balltrack
