// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_STATS_HPP
#define FACEKIT_STATS_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "facekit/annotations.hpp"
#include "facekit/bbox.hpp"

namespace facekit {

/// Exact area of the union of boxes, computed geometrically by sweeping
/// x-strips and merging y-intervals per strip. No rasterization involved.
double rect_union_area(std::span<const BBox> boxes);

/// area(region intersect union(boxes)) / area(region). region must have
/// positive area.
double coverage_fraction(const BBox& region, std::span<const BBox> boxes);

/// Share of the image frame covered by the face boxes. By default the boxes
/// are enlarged first, mirroring the region blurring actually touches;
/// use_enlarged=false measures the raw annotated boxes.
double blurred_fraction(const ImageRecord& record, bool use_enlarged = true);

struct FaceStatsReport {
  struct CategoryRow {
    int category = 0;
    std::string name;
    std::size_t images = 0;
    std::size_t with_faces = 0;
    double fraction = 0.0;
  };
  struct SuperRow {
    std::string name;
    std::size_t categories = 0;
    std::size_t images = 0;
    std::size_t with_faces = 0;
    double fraction = 0.0;
  };

  std::size_t total_images = 0;
  std::size_t images_with_faces = 0;
  std::vector<CategoryRow> categories;               // fraction desc, then index asc
  std::map<std::size_t, std::size_t> histogram;      // faces per image (>= 1) -> images
  std::vector<SuperRow> supercategories;             // name asc
};

/// Face prevalence per category, the faces-per-image histogram over images
/// with at least one face, and supercategory rollups for mapped categories.
FaceStatsReport dataset_face_stats(const AnnotationSet& set, const Hierarchy& hierarchy);

/// Per-category mean fraction of object area covered by face boxes. An image
/// with several object boxes contributes the mean over its boxes; images
/// without object boxes do not contribute. Categories with no contributing
/// images are absent.
std::map<int, double> category_overlap(const AnnotationSet& set);

}  // namespace facekit

#endif  // FACEKIT_STATS_HPP
