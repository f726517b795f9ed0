#pragma once

namespace stvg {

// Axis-aligned box in continuous coordinates, corner format. Valid when all
// coordinates are finite and x1 <= x2, y1 <= y2; zero-area (degenerate)
// boxes are permitted.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  bool operator==(const BBox&) const = default;
};

bool box_valid(const BBox& b);

double box_area(const BBox& b);

// Intersection over union, in [0, 1]. Returns 0 when the union has zero
// area (two degenerate boxes).
double box_iou(const BBox& a, const BBox& b);

// Smallest box containing both inputs.
BBox enclosing_box(const BBox& a, const BBox& b);

// Generalized IoU in (-1, 1]: IoU minus the share of the enclosing box
// covered by neither input. Throws std::domain_error when both boxes are
// degenerate, since there is no enclosing area to normalize by.
double box_giou(const BBox& a, const BBox& b);

// Sum of absolute differences over the four coordinates.
double box_l1(const BBox& a, const BBox& b);

}  // namespace stvg
