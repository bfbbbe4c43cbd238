// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/stats.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "facekit/obfuscate.hpp"

namespace facekit {

double rect_union_area(std::span<const BBox> boxes) {
  std::vector<double> xs;
  xs.reserve(boxes.size() * 2);
  for (const BBox& b : boxes) {
    if (b.x1 < b.x0 || b.y1 < b.y0) throw std::invalid_argument("box with negative extent");
    if (!b.valid()) continue;  // zero-area boxes contribute nothing
    xs.push_back(b.x0);
    xs.push_back(b.x1);
  }
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double total = 0.0;
  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double xa = xs[i];
    const double xb = xs[i + 1];
    spans.clear();
    for (const BBox& b : boxes) {
      if (b.valid() && b.x0 <= xa && b.x1 >= xb) spans.emplace_back(b.y0, b.y1);
    }
    if (spans.empty()) continue;
    std::sort(spans.begin(), spans.end());
    double covered = 0.0;
    double lo = spans.front().first;
    double hi = spans.front().second;
    for (std::size_t j = 1; j < spans.size(); ++j) {
      if (spans[j].first > hi) {
        covered += hi - lo;
        lo = spans[j].first;
        hi = spans[j].second;
      } else {
        hi = std::max(hi, spans[j].second);
      }
    }
    covered += hi - lo;
    total += (xb - xa) * covered;
  }
  return total;
}

double coverage_fraction(const BBox& region, std::span<const BBox> boxes) {
  if (!(region.area() > 0.0)) throw std::invalid_argument("region must have positive area");
  std::vector<BBox> clipped;
  clipped.reserve(boxes.size());
  for (const BBox& b : boxes) {
    const BBox c = intersection(region, b);
    if (c.valid()) clipped.push_back(c);
  }
  const double frac = rect_union_area(clipped) / region.area();
  return std::clamp(frac, 0.0, 1.0);
}

double blurred_fraction(const ImageRecord& record, bool use_enlarged) {
  if (record.faces.empty()) return 0.0;
  const BBox frame{0.0, 0.0, double(record.width), double(record.height)};
  if (!use_enlarged) return coverage_fraction(frame, record.faces);
  std::vector<BBox> enlarged;
  enlarged.reserve(record.faces.size());
  for (const BBox& b : record.faces) enlarged.push_back(enlarge_box(b, record.height, record.width));
  return coverage_fraction(frame, enlarged);
}

FaceStatsReport dataset_face_stats(const AnnotationSet& set, const Hierarchy& hierarchy) {
  FaceStatsReport report;
  std::map<int, std::pair<std::size_t, std::size_t>> per_cat;  // category -> (images, with faces)
  for (const ImageRecord& rec : set.records()) {
    ++report.total_images;
    auto& [images, with_faces] = per_cat[rec.category];
    ++images;
    if (!rec.faces.empty()) {
      ++with_faces;
      ++report.images_with_faces;
      ++report.histogram[rec.faces.size()];
    }
  }

  report.categories.reserve(per_cat.size());
  for (const auto& [cat, counts] : per_cat) {
    FaceStatsReport::CategoryRow row;
    row.category = cat;
    row.name = set.category_name(cat);
    row.images = counts.first;
    row.with_faces = counts.second;
    row.fraction = double(counts.second) / double(counts.first);
    report.categories.push_back(std::move(row));
  }
  std::sort(report.categories.begin(), report.categories.end(),
            [](const auto& a, const auto& b) {
              if (a.fraction != b.fraction) return a.fraction > b.fraction;
              return a.category < b.category;
            });

  std::map<std::string, FaceStatsReport::SuperRow> supers;
  for (const auto& [cat, counts] : per_cat) {
    const std::string* super = hierarchy.lookup(cat);
    if (!super) continue;
    auto& row = supers[*super];
    row.name = *super;
    ++row.categories;
    row.images += counts.first;
    row.with_faces += counts.second;
  }
  for (auto& [name, row] : supers) {
    row.fraction = row.images == 0 ? 0.0 : double(row.with_faces) / double(row.images);
    report.supercategories.push_back(std::move(row));
  }
  return report;
}

std::map<int, double> category_overlap(const AnnotationSet& set) {
  std::map<int, std::pair<double, std::size_t>> acc;  // category -> (sum, images)
  for (const ImageRecord& rec : set.records()) {
    if (rec.objects.empty()) continue;
    double sum = 0.0;
    for (const BBox& object : rec.objects) sum += coverage_fraction(object, rec.faces);
    auto& [total, images] = acc[rec.category];
    total += sum / double(rec.objects.size());
    ++images;
  }
  std::map<int, double> out;
  for (const auto& [cat, pair] : acc) out[cat] = pair.first / double(pair.second);
  return out;
}

}  // namespace facekit
