#include "balltrack/blob_detector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <opencv2/core.hpp>
#include <opencv2/imgproc.hpp>

namespace balltrack
{

OtsuResult otsu(const Image & gray)
{
  const cv::Mat src(gray.height, gray.width, CV_8UC1, const_cast<std::uint8_t *>(gray.data.data()));
  cv::Mat bin;
  OtsuResult r;
  r.threshold = cv::threshold(src, bin, 0, 255, cv::THRESH_BINARY | cv::THRESH_OTSU);

  double sum_fg = 0.0;
  double sum_bg = 0.0;
  std::size_t n_fg = 0;
  for (const std::uint8_t v : gray.data) {
    if (v > r.threshold) {
      sum_fg += v;
      ++n_fg;
    } else {
      sum_bg += v;
    }
  }
  const std::size_t n_bg = gray.data.size() - n_fg;
  r.has_foreground = n_fg > 0 && n_bg > 0;
  r.foreground_mean = n_fg ? sum_fg / double(n_fg) : 0.0;
  r.background_mean = n_bg ? sum_bg / double(n_bg) : 0.0;
  return r;
}

std::vector<Detection> blob_detect(const Image & patch, const BlobConfig & config)
{
  std::vector<Detection> out;
  if (patch.empty()) {
    return out;
  }
  const Image gray = to_gray(patch);
  const OtsuResult t = otsu(gray);
  if (!t.has_foreground || t.foreground_mean - t.background_mean < config.min_contrast) {
    return out;
  }

  const cv::Mat src(gray.height, gray.width, CV_8UC1, const_cast<std::uint8_t *>(gray.data.data()));
  cv::Mat bin;
  cv::threshold(src, bin, t.threshold, 255, cv::THRESH_BINARY);

  cv::Mat labels, stats, centroids;
  const int n = cv::connectedComponentsWithStats(bin, labels, stats, centroids, 8, CV_32S);

  for (int label = 1; label < n; ++label) {
    const double area = stats.at<int>(label, cv::CC_STAT_AREA);
    if (area < config.min_area || area > config.max_area) {
      continue;
    }
    const cv::Rect box(
      stats.at<int>(label, cv::CC_STAT_LEFT), stats.at<int>(label, cv::CC_STAT_TOP),
      stats.at<int>(label, cv::CC_STAT_WIDTH), stats.at<int>(label, cv::CC_STAT_HEIGHT));

    // Trace the outer contour on a padded mask of this component alone.
    cv::Mat mask = cv::Mat::zeros(box.height + 2, box.width + 2, CV_8UC1);
    cv::Mat inner = mask(cv::Rect(1, 1, box.width, box.height));
    cv::compare(labels(box), label, inner, cv::CMP_EQ);
    std::vector<std::vector<cv::Point>> contours;
    cv::findContours(mask, contours, cv::RETR_EXTERNAL, cv::CHAIN_APPROX_NONE);
    double perimeter = 0.0;
    for (const auto & c : contours) {
      perimeter += cv::arcLength(c, true);
    }
    if (perimeter <= 0.0) {
      continue;
    }
    const double circularity = 4.0 * std::numbers::pi * area / (perimeter * perimeter);
    if (circularity < config.min_circularity) {
      continue;
    }
    out.push_back({BBox{double(box.x), double(box.y), double(box.width), double(box.height)},
                   std::min(circularity, 1.0)});
  }

  sort_by_score(out);
  return out;
}

}  // namespace balltrack
