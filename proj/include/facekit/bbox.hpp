// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_BBOX_HPP
#define FACEKIT_BBOX_HPP

#include <algorithm>
#include <cmath>

namespace facekit {

/// Axis-aligned box in continuous pixel coordinates. Origin at the top-left
/// corner, x grows rightward, y grows downward. The box covers the half-open
/// region [x0, x1) x [y0, y1).
struct BBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::sqrt(width() * width() + height() * height()); }

  bool valid() const { return x0 < x1 && y0 < y1; }

  /// Half-open point membership test.
  bool contains(double x, double y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }

  /// Restricts the box to the frame [0,w] x [0,h]. May come back degenerate.
  BBox clamped(double w, double h) const {
    return BBox{std::clamp(x0, 0.0, w), std::clamp(y0, 0.0, h),
                std::clamp(x1, 0.0, w), std::clamp(y1, 0.0, h)};
  }

  bool operator==(const BBox&) const = default;
};

inline BBox intersection(const BBox& a, const BBox& b) {
  return BBox{std::max(a.x0, b.x0), std::max(a.y0, b.y0),
              std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
}

inline bool intersects(const BBox& a, const BBox& b) {
  return intersection(a, b).valid();
}

/// Intersection over union of two boxes; 0 for disjoint boxes.
inline double iou(const BBox& a, const BBox& b) {
  const BBox inter = intersection(a, b);
  if (!inter.valid()) return 0.0;
  const double ia = inter.area();
  return ia / (a.area() + b.area() - ia);
}

}  // namespace facekit

#endif  // FACEKIT_BBOX_HPP
