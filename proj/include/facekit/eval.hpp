// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_EVAL_HPP
#define FACEKIT_EVAL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "facekit/annotations.hpp"

namespace facekit {

/// Fraction of records whose label appears among the first k ranked
/// categories. Errors on an empty set or when any record ranks fewer than
/// k categories.
double top_k_accuracy(const PredictionSet& preds, int k);

std::map<int, double> per_category_accuracy(const PredictionSet& preds, int k);

struct AccuracyReport {
  struct Row {
    std::size_t images = 0;
    double top1 = 0.0;
    double top5 = 0.0;
  };
  double top1 = 0.0;
  double top5 = 0.0;
  std::map<int, Row> per_category;
  std::map<int, double> average_precision;  // filled only when requested
};

AccuracyReport accuracy_report(const PredictionSet& preds, bool with_ap = false);

struct ScoredPositive {
  std::string image_id;
  double score = 0.0;
  bool positive = false;
};

/// Non-interpolated AP over a scored list: rank by score descending (ties by
/// ascending image_id), then mean the precision observed at each positive.
double average_precision_from_scores(std::vector<ScoredPositive> items);

/// AP for one category. Every record must carry a score for the category and
/// at least one record must be labeled with it.
double average_precision(const PredictionSet& preds, int category);

struct CorrelationResult {
  double r = 0.0;
  double p = 1.0;
  double log_p = 0.0;  // natural log of p, finite even when p underflows
  std::size_t n = 0;
};

/// Pearson correlation with a two-sided p-value from the Student t
/// distribution, evaluated through the regularized incomplete beta.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double ibeta_reg(double a, double b, double x);
/// Natural log of I_x(a, b); stays finite for values far below DBL_MIN.
double ibeta_reg_log(double a, double b, double x);

struct DropBin {
  double lo = 0.0;
  double hi = 0.0;  // +inf for the final unbounded bin
  std::size_t count = 0;
  double mean_drop = 0.0;
};

/// Groups categories into half-open bins [e_i, e_{i+1}) by their fraction,
/// with a final unbounded bin, and means the drops per bin. Only nonempty
/// bins are returned.
std::vector<DropBin> bin_drop_curve(const std::map<int, double>& fractions,
                                    const std::map<int, double>& drops,
                                    std::span<const double> edges);

inline constexpr double kDefaultBinEdgesPercent[] = {0.0, 1.0, 2.0, 4.0, 8.0};

struct RunAggregate {
  double mean = 0.0;
  double sem = 0.0;  // sample sd / sqrt(n); 0 when n == 1
};

RunAggregate aggregate_runs(std::span<const double> values);

struct DeltaReport {
  struct Row {
    double top1 = 0.0;
    double top5 = 0.0;
    std::optional<double> ap;
  };
  std::map<int, Row> per_category;  // baseline minus treatment
  double mean_top1 = 0.0;
  double mean_top5 = 0.0;
  std::optional<double> mean_ap;
};

/// Per-category baseline-minus-treatment differences. The two reports must
/// cover identical category sets. AP deltas appear for categories where both
/// sides carry AP.
DeltaReport delta_report(const AccuracyReport& baseline, const AccuracyReport& treatment);

}  // namespace facekit

#endif  // FACEKIT_EVAL_HPP
