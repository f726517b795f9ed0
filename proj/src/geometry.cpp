#include "stvgkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stvg {

namespace {

void require_valid(const BBox& b, const char* name) {
  if (!box_valid(b)) {
    throw std::invalid_argument(std::string(name) +
                                ": box coordinates must be finite with x1 <= x2, y1 <= y2");
  }
}

double area_unchecked(const BBox& b) { return (b.x2 - b.x1) * (b.y2 - b.y1); }

double intersection_area(const BBox& a, const BBox& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

}  // namespace

bool box_valid(const BBox& b) {
  return std::isfinite(b.x1) && std::isfinite(b.y1) && std::isfinite(b.x2) &&
         std::isfinite(b.y2) && b.x1 <= b.x2 && b.y1 <= b.y2;
}

double box_area(const BBox& b) {
  require_valid(b, "box");
  return area_unchecked(b);
}

double box_iou(const BBox& a, const BBox& b) {
  require_valid(a, "a");
  require_valid(b, "b");
  const double inter = intersection_area(a, b);
  const double uni = area_unchecked(a) + area_unchecked(b) - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

BBox enclosing_box(const BBox& a, const BBox& b) {
  require_valid(a, "a");
  require_valid(b, "b");
  return BBox{std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2),
              std::max(a.y2, b.y2)};
}

double box_giou(const BBox& a, const BBox& b) {
  require_valid(a, "a");
  require_valid(b, "b");
  const double area_a = area_unchecked(a);
  const double area_b = area_unchecked(b);
  if (area_a <= 0.0 && area_b <= 0.0) {
    throw std::domain_error("GIoU is undefined for two degenerate boxes");
  }
  const double inter = intersection_area(a, b);
  const double uni = area_a + area_b - inter;
  const BBox hull{std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2),
                  std::max(a.y2, b.y2)};
  const double hull_area = area_unchecked(hull);
  // uni > 0 and hull_area >= uni here: at least one box has positive area.
  return inter / uni - (hull_area - uni) / hull_area;
}

double box_l1(const BBox& a, const BBox& b) {
  require_valid(a, "a");
  require_valid(b, "b");
  return std::abs(a.x1 - b.x1) + std::abs(a.y1 - b.y1) + std::abs(a.x2 - b.x2) +
         std::abs(a.y2 - b.y2);
}

}  // namespace stvg
