// Independent reference computations used only by tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "balltrack/geometry.hpp"
#include "balltrack/metrics.hpp"

namespace balltrack::testing
{

/// IoU of integer boxes by counting the pixels each one covers.
inline double pixel_count_iou(const BBox & a, const BBox & b)
{
  const int x0 = int(std::min(a.x, b.x));
  const int y0 = int(std::min(a.y, b.y));
  const int x1 = int(std::max(a.right(), b.right()));
  const int y1 = int(std::max(a.bottom(), b.bottom()));
  auto inside = [](const BBox & box, int px, int py) {
    return px >= box.x && px < box.right() && py >= box.y && py < box.bottom();
  };
  std::int64_t inter = 0;
  std::int64_t uni = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const bool ia = inside(a, x, y);
      const bool ib = inside(b, x, y);
      inter += (ia && ib) ? 1 : 0;
      uni += (ia || ib) ? 1 : 0;
    }
  }
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

/// Brute-force AP: for every score cut k (top-k detections), match the
/// prefix from scratch, then integrate the interpolated precision
/// p(r) = max{precision_j : recall_j >= r} with rectangle sums over the
/// distinct recall levels.
inline double brute_force_ap(const std::vector<metrics::ImageDetections> & images, double thr)
{
  struct Item
  {
    std::size_t image;
    Detection det;
    std::size_t order;
  };
  std::vector<Item> items;
  std::size_t n_gt = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    n_gt += images[i].ground_truth.size();
    for (const auto & d : images[i].predictions) {
      items.push_back({i, d, items.size()});
    }
  }
  std::sort(items.begin(), items.end(), [](const Item & a, const Item & b) {
    return a.det.score != b.det.score ? a.det.score > b.det.score : a.order < b.order;
  });

  auto tp_of_prefix = [&](std::size_t k) {
    std::vector<std::set<std::size_t>> used(images.size());
    std::size_t tp = 0;
    for (std::size_t n = 0; n < k; ++n) {
      const auto & gts = images[items[n].image].ground_truth;
      double best = -1.0;
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < gts.size(); ++j) {
        if (used[items[n].image].count(j)) {
          continue;
        }
        const double o = iou(items[n].det.bbox, gts[j]);
        if (o > best) {
          best = o;
          best_j = j;
        }
      }
      if (best >= thr) {
        used[items[n].image].insert(best_j);
        ++tp;
      }
    }
    return tp;
  };

  std::vector<double> rec;
  std::vector<double> prec;
  for (std::size_t k = 1; k <= items.size(); ++k) {
    const auto tp = tp_of_prefix(k);
    rec.push_back(double(tp) / double(n_gt));
    prec.push_back(double(tp) / double(k));
  }

  std::set<double> levels(rec.begin(), rec.end());
  double ap = 0.0;
  double prev = 0.0;
  for (const double r : levels) {
    double p = 0.0;
    for (std::size_t j = 0; j < rec.size(); ++j) {
      if (rec[j] >= r) {
        p = std::max(p, prec[j]);
      }
    }
    ap += (r - prev) * p;
    prev = r;
  }
  return ap;
}

inline BBox random_int_box(std::mt19937_64 & rng, int extent, int max_side)
{
  std::uniform_int_distribution<int> pos(0, extent);
  std::uniform_int_distribution<int> side(1, max_side);
  return {double(pos(rng)), double(pos(rng)), double(side(rng)), double(side(rng))};
}

/// Small random AP instance: a few images, boxes near the ground truth and
/// coarse scores so that ties are common.
inline std::vector<metrics::ImageDetections> random_ap_instance(std::mt19937_64 & rng)
{
  std::uniform_int_distribution<int> n_img(1, 4);
  std::uniform_int_distribution<int> n_gt(0, 4);
  std::uniform_int_distribution<int> n_pred(0, 6);
  std::uniform_real_distribution<double> pos(0, 60);
  std::uniform_real_distribution<double> side(4, 20);
  std::uniform_real_distribution<double> jitter(-4, 4);
  std::uniform_int_distribution<int> coarse(0, 4);
  std::bernoulli_distribution near(0.6);

  std::vector<metrics::ImageDetections> images(std::size_t(n_img(rng)));
  for (auto & im : images) {
    const int g = n_gt(rng);
    for (int i = 0; i < g; ++i) {
      im.ground_truth.push_back({pos(rng), pos(rng), side(rng), side(rng)});
    }
    const int p = n_pred(rng);
    for (int i = 0; i < p; ++i) {
      BBox b{pos(rng), pos(rng), side(rng), side(rng)};
      if (!im.ground_truth.empty() && near(rng)) {
        const BBox & t = im.ground_truth[std::size_t(rng() % im.ground_truth.size())];
        b = {t.x + jitter(rng), t.y + jitter(rng), t.w + jitter(rng) / 2, t.h + jitter(rng) / 2};
      }
      im.predictions.push_back({b, coarse(rng) / 4.0});
    }
  }
  if (std::all_of(images.begin(), images.end(), [](auto & im) { return im.ground_truth.empty(); })) {
    images[0].ground_truth.push_back({10, 10, 10, 10});
  }
  return images;
}

}  // namespace balltrack::testing
