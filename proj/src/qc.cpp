// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/qc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "facekit/errors.hpp"

namespace facekit {

namespace {

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::invalid_argument("IoU threshold must lie in (0,1]");
}

}  // namespace

MatchResult match_boxes(std::span<const BBox> pred, std::span<const BBox> gt, double threshold) {
  check_threshold(threshold);

  struct Candidate {
    double overlap;
    std::size_t pred_index;
    std::size_t gt_index;
  };
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double overlap = iou(pred[p], gt[g]);
      if (overlap >= threshold) candidates.push_back({overlap, p, g});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return std::tie(a.pred_index, a.gt_index) < std::tie(b.pred_index, b.gt_index);
  });

  MatchResult result;
  std::vector<bool> pred_used(pred.size(), false);
  std::vector<bool> gt_used(gt.size(), false);
  for (const Candidate& c : candidates) {
    if (pred_used[c.pred_index] || gt_used[c.gt_index]) continue;
    pred_used[c.pred_index] = true;
    gt_used[c.gt_index] = true;
    result.matches.emplace_back(c.pred_index, c.gt_index);
  }
  for (std::size_t p = 0; p < pred.size(); ++p)
    if (!pred_used[p]) result.unmatched_pred.push_back(p);
  for (std::size_t g = 0; g < gt.size(); ++g)
    if (!gt_used[g]) result.unmatched_gt.push_back(g);
  return result;
}

AuditResult finalize_audit(std::vector<AuditRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const AuditRow& a, const AuditRow& b) { return a.category < b.category; });
  AuditResult result;
  result.rows = std::move(rows);
  if (result.rows.empty()) return result;
  double fp = 0.0;
  double fn = 0.0;
  for (const AuditRow& row : result.rows) {
    fp += double(row.false_positives);
    fn += double(row.false_negatives);
  }
  result.avg_false_positives = fp / double(result.rows.size());
  result.avg_false_negatives = fn / double(result.rows.size());
  return result;
}

AuditResult audit_fp_fn(const AnnotationSet& annotations, const AnnotationSet& ground_truth,
                        double iou_threshold) {
  check_threshold(iou_threshold);
  if (annotations.size() != ground_truth.size())
    throw std::invalid_argument("annotation and ground-truth image sets differ");

  std::map<int, AuditRow> per_cat;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const ImageRecord& ann = annotations.records()[i];
    const ImageRecord& truth = ground_truth.records()[i];
    if (ann.image_id != truth.image_id)
      throw std::invalid_argument("annotation and ground-truth image sets differ");
    const MatchResult m = match_boxes(ann.faces, truth.faces, iou_threshold);
    AuditRow& row = per_cat[ann.category];
    row.category = ann.category;
    row.name = annotations.category_name(ann.category);
    ++row.images;
    row.false_positives += m.unmatched_pred.size();
    row.false_negatives += m.unmatched_gt.size();
  }

  std::vector<AuditRow> rows;
  rows.reserve(per_cat.size());
  for (auto& [cat, row] : per_cat) rows.push_back(std::move(row));
  return finalize_audit(std::move(rows));
}

bool gold_check(std::span<const BBox> worker, std::span<const BBox> gold, double iou_threshold) {
  const MatchResult m = match_boxes(worker, gold, iou_threshold);
  return m.unmatched_pred.empty() && m.unmatched_gt.empty();
}

QcSession make_session(std::vector<SessionImage> images, double gold_iou) {
  check_threshold(gold_iou);
  if (images.size() != kSessionSize)
    throw std::invalid_argument("a session holds exactly " + std::to_string(kSessionSize) +
                                " images");
  const std::size_t golds =
      std::size_t(std::count_if(images.begin(), images.end(),
                                [](const SessionImage& im) { return im.gold; }));
  if (golds != kGoldPerSession)
    throw std::invalid_argument("a session holds exactly " + std::to_string(kGoldPerSession) +
                                " gold images");
  QcSession s;
  s.images = std::move(images);
  s.gold_iou = gold_iou;
  return s;
}

QcSession session_step(QcSession s, std::span<const BBox> submission) {
  if (s.completed) throw std::logic_error("session already completed");

  const SessionImage& image = s.images[s.index];
  if (!image.gold) {
    s.events.push_back({s.index, SessionOutcome::advanced, {}});
    ++s.index;
  } else if (gold_check(submission, image.truth, s.gold_iou)) {
    s.events.push_back({s.index, SessionOutcome::gold_correct, {}});
    ++s.index;
  } else {
    --s.lives;
    s.events.push_back({s.index, SessionOutcome::gold_mistake, image.truth});
    if (s.lives == 0) {
      s.events.push_back({s.index, SessionOutcome::restart, {}});
      s.index = 0;
      s.lives = kStartLives;
    }
    // Otherwise the worker stays on the same image, now shown the truth.
  }
  if (s.index >= s.images.size()) s.completed = true;
  return s;
}

std::size_t restart_count(const QcSession& s) {
  return std::size_t(std::count_if(s.events.begin(), s.events.end(), [](const SessionEvent& e) {
    return e.outcome == SessionOutcome::restart;
  }));
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string line_label(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
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

}  // namespace

std::vector<WorkerSubmission> load_submission_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<WorkerSubmission> log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = line_label(path, line_no);
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw ParseError(where + ": malformed record");

    WorkerSubmission sub;
    for (const char* key : {"session_id", "image_id"}) {
      if (!j.contains(key) || !j.at(key).is_string())
        throw ParseError(where + ": missing or non-string " + std::string(key));
    }
    sub.session_id = j.at("session_id").get<std::string>();
    sub.image_id = j.at("image_id").get<std::string>();
    if (!j.contains("timestamp") || !j.at("timestamp").is_number_integer())
      throw ParseError(where + ": missing integer timestamp");
    sub.timestamp = j.at("timestamp").get<std::int64_t>();
    if (!j.contains("boxes") || !j.at("boxes").is_array())
      throw ParseError(where + ": missing boxes list");
    for (const auto& bj : j.at("boxes")) sub.boxes.push_back(parse_box(bj, where));
    log.push_back(std::move(sub));
  }
  return log;
}

std::string submission_log_to_jsonl(std::span<const WorkerSubmission> log) {
  std::string out;
  for (const WorkerSubmission& sub : log) {
    ordered_json j;
    j["session_id"] = sub.session_id;
    j["image_id"] = sub.image_id;
    ordered_json boxes = ordered_json::array();
    for (const BBox& b : sub.boxes) boxes.push_back(ordered_json::array({b.x0, b.y0, b.x1, b.y1}));
    j["boxes"] = std::move(boxes);
    j["timestamp"] = sub.timestamp;
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

std::vector<BBox> revalidate_boxes(std::span<const BBox> boxes, int width, int height) {
  std::vector<BBox> out;
  out.reserve(boxes.size());
  for (const BBox& raw : boxes) {
    const BBox b = raw.clamped(double(width), double(height));
    if (!b.valid()) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&b](const BBox& kept) {
      return iou(kept, b) >= kDedupIou;
    });
    if (!duplicate) out.push_back(b);
  }
  return out;
}

}  // namespace

AnnotationSet worker_set_from_log(const AnnotationSet& detector,
                                  std::span<const WorkerSubmission> log) {
  // Latest timestamp wins per image; later lines win exact ties.
  std::map<std::string, const WorkerSubmission*> last;
  for (const WorkerSubmission& sub : log) {
    if (!detector.find(sub.image_id))
      throw ValidationError("submission for unknown image_id '" + sub.image_id + "'");
    auto [it, inserted] = last.try_emplace(sub.image_id, &sub);
    if (!inserted && sub.timestamp >= it->second->timestamp) it->second = &sub;
  }

  std::vector<ImageRecord> records;
  records.reserve(last.size());
  for (const auto& [image_id, sub] : last) {
    const ImageRecord& base = *detector.find(image_id);
    ImageRecord rec = base;
    rec.faces = revalidate_boxes(sub->boxes, base.width, base.height);
    records.push_back(std::move(rec));
  }
  return AnnotationSet(std::move(records), detector.categories());
}

AnnotationSet merge_worker_edits(const AnnotationSet& detector, const AnnotationSet& worker) {
  for (const ImageRecord& rec : worker.records()) {
    if (!detector.find(rec.image_id))
      throw std::invalid_argument("worker record for unknown image_id '" + rec.image_id + "'");
  }

  std::vector<ImageRecord> records;
  records.reserve(detector.size());
  for (const ImageRecord& base : detector.records()) {
    ImageRecord rec = base;
    const ImageRecord* edited = worker.find(base.image_id);
    rec.faces = revalidate_boxes(edited ? edited->faces : base.faces, base.width, base.height);
    records.push_back(std::move(rec));
  }
  return AnnotationSet(std::move(records), detector.categories());
}

}  // namespace facekit
