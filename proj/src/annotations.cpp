// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace facekit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string line_label(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
}

void check_box_in_frame(const BBox& b, int width, int height, const std::string& where) {
  if (b.x0 < 0 || b.y0 < 0 || b.x1 > width || b.y1 > height)
    throw ValidationError(where + ": box outside image frame");
}

// Load-time box policy: a box with positive extent lying entirely beyond the
// frame is an error; boxes straddling the frame are clamped; boxes that end
// up with zero (or negative) width or height are dropped and counted.
std::vector<BBox> sanitize_boxes(const std::vector<BBox>& raw, int width, int height,
                                 std::size_t* dropped, const std::string& where) {
  std::vector<BBox> out;
  out.reserve(raw.size());
  for (const BBox& b : raw) {
    const bool has_extent = b.x0 < b.x1 && b.y0 < b.y1;
    if (has_extent && (b.x0 >= width || b.x1 <= 0 || b.y0 >= height || b.y1 <= 0))
      throw ValidationError(where + ": box entirely outside image");
    const BBox c = b.clamped(width, height);
    if (c.valid())
      out.push_back(c);
    else
      ++*dropped;
  }
  return out;
}

BBox parse_box(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(where + ": box must be a 4-number list");
  for (const auto& v : j)
    if (!v.is_number()) throw ParseError(where + ": box coordinates must be numbers");
  BBox b{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  if (!std::isfinite(b.x0) || !std::isfinite(b.y0) || !std::isfinite(b.x1) || !std::isfinite(b.y1))
    throw ValidationError(where + ": non-finite box coordinate");
  return b;
}

int require_int(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(where + std::string(": '") + key + "' must be an integer");
  return v.get<int>();
}

ordered_json box_to_json(const BBox& b) {
  return ordered_json::array({b.x0, b.y0, b.x1, b.y1});
}

}  // namespace

AnnotationSet::AnnotationSet(std::vector<ImageRecord> records, std::map<int, std::string> names)
    : records_(std::move(records)), categories_(std::move(names)) {
  std::sort(records_.begin(), records_.end(),
            [](const ImageRecord& a, const ImageRecord& b) { return a.image_id < b.image_id; });
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const ImageRecord& r = records_[i];
    if (r.width < 1 || r.height < 1)
      throw ValidationError(r.image_id + ": image dimensions must be positive");
    if (r.category < 0)
      throw ValidationError(r.image_id + ": negative category index");
    if (r.faces.size() > kMaxFacesPerImage)
      throw ValidationError(r.image_id + ": more than " + std::to_string(kMaxFacesPerImage) + " faces");
    for (const BBox& b : r.faces) {
      if (!b.valid()) throw ValidationError(r.image_id + ": degenerate face box");
      check_box_in_frame(b, r.width, r.height, r.image_id);
    }
    for (const BBox& b : r.objects) {
      if (!b.valid()) throw ValidationError(r.image_id + ": degenerate object box");
      check_box_in_frame(b, r.width, r.height, r.image_id);
    }
    if (!index_.emplace(r.image_id, i).second)
      throw ValidationError("duplicate image_id '" + r.image_id + "'");
    categories_.try_emplace(r.category, std::to_string(r.category));
  }
}

const ImageRecord* AnnotationSet::find(const std::string& image_id) const {
  auto it = index_.find(image_id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

const std::string& AnnotationSet::category_name(int category) const {
  auto it = categories_.find(category);
  if (it == categories_.end())
    throw ValidationError("unknown category " + std::to_string(category));
  return it->second;
}

AnnotationLoadResult load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<ImageRecord> records;
  std::size_t dropped = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = line_label(path, line_no);
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw ParseError(where + ": malformed record");

    ImageRecord rec;
    if (!j.contains("image_id") || !j.at("image_id").is_string())
      throw ParseError(where + ": missing or non-string image_id");
    rec.image_id = j.at("image_id").get<std::string>();
    rec.width = require_int(j, "width", where);
    rec.height = require_int(j, "height", where);
    rec.category = require_int(j, "category", where);
    if (rec.width < 1 || rec.height < 1)
      throw ValidationError(where + ": image dimensions must be positive");

    if (!j.contains("faces") || !j.at("faces").is_array())
      throw ParseError(where + ": missing faces list");
    std::vector<BBox> faces;
    for (const auto& fb : j.at("faces")) faces.push_back(parse_box(fb, where));
    if (faces.size() > kMaxFacesPerImage)
      throw ValidationError(where + ": more than " + std::to_string(kMaxFacesPerImage) + " faces");
    rec.faces = sanitize_boxes(faces, rec.width, rec.height, &dropped, where);

    if (j.contains("objects")) {
      if (!j.at("objects").is_array()) throw ParseError(where + ": objects must be a list");
      std::vector<BBox> objects;
      for (const auto& ob : j.at("objects")) objects.push_back(parse_box(ob, where));
      rec.objects = sanitize_boxes(objects, rec.width, rec.height, &dropped, where);
    }
    records.push_back(std::move(rec));
  }
  return AnnotationLoadResult{AnnotationSet(std::move(records)), dropped};
}

std::string annotations_to_jsonl(const AnnotationSet& set) {
  std::string out;
  for (const ImageRecord& r : set.records()) {
    ordered_json j;
    j["image_id"] = r.image_id;
    j["width"] = r.width;
    j["height"] = r.height;
    j["category"] = r.category;
    ordered_json faces = ordered_json::array();
    for (const BBox& b : r.faces) faces.push_back(box_to_json(b));
    j["faces"] = std::move(faces);
    if (!r.objects.empty()) {
      ordered_json objects = ordered_json::array();
      for (const BBox& b : r.objects) objects.push_back(box_to_json(b));
      j["objects"] = std::move(objects);
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_annotations(const AnnotationSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << annotations_to_jsonl(set);
}

PredictionSet::PredictionSet(std::vector<PredictionRecord> records, std::string seed_id)
    : records_(std::move(records)), seed_id_(std::move(seed_id)) {
  std::sort(records_.begin(), records_.end(),
            [](const PredictionRecord& a, const PredictionRecord& b) { return a.image_id < b.image_id; });
  std::string prev;
  for (PredictionRecord& r : records_) {
    if (!prev.empty() && r.image_id == prev)
      throw ValidationError("duplicate image_id '" + r.image_id + "'");
    prev = r.image_id;
    if (r.ranked.size() < 5)
      throw ValidationError(r.image_id + ": fewer than 5 ranked entries");
    for (const auto& [cat, score] : r.ranked)
      if (!std::isfinite(score))
        throw ValidationError(r.image_id + ": non-finite score");
    // Canonical order: descending score, ties broken by ascending category.
    std::sort(r.ranked.begin(), r.ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    std::vector<int> cats;
    cats.reserve(r.ranked.size());
    for (const auto& [cat, score] : r.ranked) cats.push_back(cat);
    std::sort(cats.begin(), cats.end());
    if (std::adjacent_find(cats.begin(), cats.end()) != cats.end())
      throw ValidationError(r.image_id + ": duplicate category in ranked list");
  }
}

PredictionSet load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<PredictionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = line_label(path, line_no);
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw ParseError(where + ": malformed record");

    PredictionRecord rec;
    if (!j.contains("image_id") || !j.at("image_id").is_string())
      throw ParseError(where + ": missing or non-string image_id");
    rec.image_id = j.at("image_id").get<std::string>();
    rec.label = require_int(j, "label", where);
    if (!j.contains("ranked") || !j.at("ranked").is_array())
      throw ParseError(where + ": missing ranked list");
    for (const auto& e : j.at("ranked")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number())
        throw ParseError(where + ": ranked entries must be [category, score] pairs");
      rec.ranked.emplace_back(e[0].get<int>(), e[1].get<double>());
    }
    records.push_back(std::move(rec));
  }
  return PredictionSet(std::move(records));
}

std::string predictions_to_jsonl(const PredictionSet& set) {
  std::string out;
  for (const PredictionRecord& r : set.records()) {
    ordered_json j;
    j["image_id"] = r.image_id;
    j["label"] = r.label;
    ordered_json ranked = ordered_json::array();
    for (const auto& [cat, score] : r.ranked)
      ranked.push_back(ordered_json::array({cat, score}));
    j["ranked"] = std::move(ranked);
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_predictions(const PredictionSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << predictions_to_jsonl(set);
}

Hierarchy load_hierarchy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  Hierarchy h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = line_label(path, line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(where + ": expected 'category<TAB>supercategory'");
    int category = 0;
    try {
      std::size_t used = 0;
      category = std::stoi(line.substr(0, tab), &used);
      if (used != tab) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(where + ": category must be an integer");
    }
    std::string super = line.substr(tab + 1);
    if (super.empty()) throw ParseError(where + ": empty supercategory name");
    if (!h.supercategory_of.emplace(category, std::move(super)).second)
      throw ValidationError(where + ": duplicate mapping for category " + std::to_string(category));
  }
  return h;
}

}  // namespace facekit
