// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_ANNOTATIONS_HPP
#define FACEKIT_ANNOTATIONS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "facekit/bbox.hpp"
#include "facekit/errors.hpp"

namespace facekit {

/// One image's ground truth: identity, dimensions, category label and boxes.
/// image_id doubles as the image's path relative to a dataset root.
struct ImageRecord {
  std::string image_id;
  int width = 0;
  int height = 0;
  int category = 0;
  std::vector<BBox> faces;
  std::vector<BBox> objects;  // localization boxes, empty when unavailable
};

/// Upstream face detectors report at most this many boxes per image.
inline constexpr std::size_t kMaxFacesPerImage = 100;

/// Immutable collection of per-image records, canonically ordered by
/// image_id, plus the category index -> name table.
class AnnotationSet {
public:
  AnnotationSet() = default;

  /// Validates invariants (unique ids, boxes inside dimensions) and sorts
  /// records by image_id. Category names default to the decimal index for
  /// any category without an entry in `names`.
  AnnotationSet(std::vector<ImageRecord> records, std::map<int, std::string> names = {});

  const std::vector<ImageRecord>& records() const { return records_; }
  const std::map<int, std::string>& categories() const { return categories_; }

  const ImageRecord* find(const std::string& image_id) const;
  const std::string& category_name(int category) const;

  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

private:
  std::vector<ImageRecord> records_;
  std::map<int, std::string> categories_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Per-image ranked category scores from an external classifier.
/// `ranked` is kept sorted by descending score, ties by ascending category.
struct PredictionRecord {
  std::string image_id;
  int label = 0;
  std::vector<std::pair<int, double>> ranked;
};

class PredictionSet {
public:
  PredictionSet() = default;
  PredictionSet(std::vector<PredictionRecord> records, std::string seed_id = {});

  const std::vector<PredictionRecord>& records() const { return records_; }
  const std::string& seed_id() const { return seed_id_; }

  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

private:
  std::vector<PredictionRecord> records_;
  std::string seed_id_;
};

/// Flat category -> supercategory rollup.
struct Hierarchy {
  std::map<int, std::string> supercategory_of;

  const std::string* lookup(int category) const {
    auto it = supercategory_of.find(category);
    return it == supercategory_of.end() ? nullptr : &it->second;
  }
};

struct AnnotationLoadResult {
  AnnotationSet set;
  std::size_t dropped_boxes = 0;  // degenerate boxes removed during load
};

/// Reads a line-delimited annotation file. Boxes are clamped to the image
/// frame; boxes left with zero width or height are dropped and counted.
/// Throws ParseError (malformed line) or ValidationError (bad content).
AnnotationLoadResult load_annotations(const std::string& path);

/// Canonical serialization: records ascending by image_id, fixed key order,
/// shortest round-trip number formatting. save(load(f)) reproduces a
/// canonically formatted f byte for byte.
std::string annotations_to_jsonl(const AnnotationSet& set);
void save_annotations(const AnnotationSet& set, const std::string& path);

PredictionSet load_predictions(const std::string& path);
std::string predictions_to_jsonl(const PredictionSet& set);
void save_predictions(const PredictionSet& set, const std::string& path);

/// Reads "category<TAB>supercategory" pairs. Duplicate categories are an error.
Hierarchy load_hierarchy(const std::string& path);

}  // namespace facekit

#endif  // FACEKIT_ANNOTATIONS_HPP
