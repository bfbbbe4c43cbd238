// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_QC_HPP
#define FACEKIT_QC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facekit/annotations.hpp"
#include "facekit/bbox.hpp"

namespace facekit {

/// Greedy box matching: pairs ordered by descending IoU (ties by pred index,
/// then gt index), each box used at most once, pairs below the threshold
/// never match.
struct MatchResult {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (pred, gt) indices
  std::vector<std::size_t> unmatched_pred;
  std::vector<std::size_t> unmatched_gt;
};

MatchResult match_boxes(std::span<const BBox> pred, std::span<const BBox> gt, double threshold);

inline constexpr double kDefaultAuditIou = 0.5;
inline constexpr double kDefaultGoldIou = 0.5;

struct AuditRow {
  int category = 0;
  std::string name;
  std::size_t images = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

struct AuditResult {
  std::vector<AuditRow> rows;  // ascending category index
  double avg_false_positives = 0.0;
  double avg_false_negatives = 0.0;
};

/// Sorts the rows by category and fills in the per-category averages.
AuditResult finalize_audit(std::vector<AuditRow> rows);

/// Compares annotation boxes against ground truth image by image: unmatched
/// annotation boxes count as false positives, unmatched ground-truth boxes as
/// false negatives, summed per category. Both sets must cover exactly the
/// same image ids.
AuditResult audit_fp_fn(const AnnotationSet& annotations, const AnnotationSet& ground_truth,
                        double iou_threshold = kDefaultAuditIou);

/// True iff the submission matches the gold boxes one-to-one: no unmatched
/// box on either side at the given threshold.
bool gold_check(std::span<const BBox> worker, std::span<const BBox> gold,
                double iou_threshold = kDefaultGoldIou);

inline constexpr std::size_t kSessionSize = 50;
inline constexpr std::size_t kGoldPerSession = 3;
inline constexpr int kStartLives = 2;

struct SessionImage {
  std::string image_id;
  std::vector<BBox> truth;
  bool gold = false;
};

enum class SessionOutcome { advanced, gold_correct, gold_mistake, restart };

struct SessionEvent {
  std::size_t index = 0;
  SessionOutcome outcome = SessionOutcome::advanced;
  std::vector<BBox> revealed;  // the truth shown to the worker after a gold mistake
};

/// One worker's pass through a 50-image task with 3 golds and 2 lives.
struct QcSession {
  std::vector<SessionImage> images;
  std::size_t index = 0;
  int lives = kStartLives;
  bool completed = false;
  std::vector<SessionEvent> events;
  double gold_iou = kDefaultGoldIou;
};

/// Builds a fresh session, validating the 50-image / 3-gold shape.
QcSession make_session(std::vector<SessionImage> images, double gold_iou = kDefaultGoldIou);

/// Advances the session by one submission. Non-gold images always advance.
/// A gold mistake costs a life and keeps the worker on the same image with
/// the truth revealed in the event log; losing the last life restarts the
/// session from image 0 with fresh lives (the log is kept).
QcSession session_step(QcSession s, std::span<const BBox> submission);

std::size_t restart_count(const QcSession& s);

/// One line of a worker-submission log.
struct WorkerSubmission {
  std::string session_id;
  std::string image_id;
  std::vector<BBox> boxes;
  std::int64_t timestamp = 0;
};

std::vector<WorkerSubmission> load_submission_log(const std::string& path);
std::string submission_log_to_jsonl(std::span<const WorkerSubmission> log);

/// Collapses a submission log onto the detector set's images: for each image
/// the submission with the latest timestamp wins (later lines break ties).
/// Boxes are clamped to the frame and degenerate ones dropped. Unknown
/// image ids are an error.
AnnotationSet worker_set_from_log(const AnnotationSet& detector,
                                  std::span<const WorkerSubmission> log);

/// Replaces detector boxes wholesale on every image the worker touched,
/// then re-validates: clamp, drop degenerates, and collapse near-duplicate
/// boxes (IoU >= 0.95) keeping the earliest.
AnnotationSet merge_worker_edits(const AnnotationSet& detector, const AnnotationSet& worker);

inline constexpr double kDedupIou = 0.95;

}  // namespace facekit

#endif  // FACEKIT_QC_HPP
