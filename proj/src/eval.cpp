// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace facekit {

namespace {

bool hit_in_top_k(const PredictionRecord& rec, int k) {
  if (rec.ranked.size() < std::size_t(k)) {
    throw std::invalid_argument("record ranks fewer than k categories: " + rec.image_id);
  }
  for (int i = 0; i < k; ++i) {
    if (rec.ranked[std::size_t(i)].first == rec.label) return true;
  }
  return false;
}

}  // namespace

double top_k_accuracy(const PredictionSet& preds, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (preds.empty()) throw std::invalid_argument("accuracy of an empty prediction set is undefined");
  std::size_t hits = 0;
  for (const PredictionRecord& rec : preds.records()) {
    if (hit_in_top_k(rec, k)) ++hits;
  }
  return double(hits) / double(preds.size());
}

std::map<int, double> per_category_accuracy(const PredictionSet& preds, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::map<int, std::pair<std::size_t, std::size_t>> counts;  // label -> (images, hits)
  for (const PredictionRecord& rec : preds.records()) {
    auto& [images, hits] = counts[rec.label];
    ++images;
    if (hit_in_top_k(rec, k)) ++hits;
  }
  std::map<int, double> out;
  for (const auto& [label, c] : counts) out[label] = double(c.second) / double(c.first);
  return out;
}

AccuracyReport accuracy_report(const PredictionSet& preds, bool with_ap) {
  AccuracyReport report;
  report.top1 = top_k_accuracy(preds, 1);
  report.top5 = top_k_accuracy(preds, 5);
  std::map<int, std::pair<std::size_t, std::size_t>> top1_counts;
  std::map<int, std::size_t> top5_hits;
  for (const PredictionRecord& rec : preds.records()) {
    auto& [images, hits] = top1_counts[rec.label];
    ++images;
    if (hit_in_top_k(rec, 1)) ++hits;
    if (hit_in_top_k(rec, 5)) ++top5_hits[rec.label];
  }
  for (const auto& [label, c] : top1_counts) {
    AccuracyReport::Row row;
    row.images = c.first;
    row.top1 = double(c.second) / double(c.first);
    row.top5 = double(top5_hits[label]) / double(c.first);
    report.per_category[label] = row;
  }
  if (with_ap) {
    for (const auto& [label, row] : report.per_category) {
      report.average_precision[label] = average_precision(preds, label);
    }
  }
  return report;
}

double average_precision_from_scores(std::vector<ScoredPositive> items) {
  std::sort(items.begin(), items.end(), [](const ScoredPositive& a, const ScoredPositive& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.image_id < b.image_id;
  });
  std::size_t positives = 0;
  double sum = 0.0;
  for (std::size_t rank = 0; rank < items.size(); ++rank) {
    if (!items[rank].positive) continue;
    ++positives;
    sum += double(positives) / double(rank + 1);
  }
  if (positives == 0) throw std::invalid_argument("average precision needs at least one positive");
  return sum / double(positives);
}

double average_precision(const PredictionSet& preds, int category) {
  std::vector<ScoredPositive> items;
  items.reserve(preds.size());
  for (const PredictionRecord& rec : preds.records()) {
    const auto it = std::find_if(rec.ranked.begin(), rec.ranked.end(),
                                 [category](const auto& e) { return e.first == category; });
    if (it == rec.ranked.end()) {
      throw std::invalid_argument("record carries no score for the category: " + rec.image_id);
    }
    items.push_back({rec.image_id, it->second, rec.label == category});
  }
  return average_precision_from_scores(std::move(items));
}

namespace {

double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-14;
  constexpr int kMaxIter = 300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

void check_ibeta_args(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
}

bool use_direct_expansion(double a, double b, double x) {
  return x < (a + 1.0) / (a + b + 2.0);
}

}  // namespace

double ibeta_reg_log(double a, double b, double x) {
  check_ibeta_args(a, b, x);
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x >= 1.0) return 0.0;
  const double log_bt = a * std::log(x) + b * std::log1p(-x) - lbeta(a, b);
  if (use_direct_expansion(a, b, x)) {
    return std::min(0.0, log_bt - std::log(a) + std::log(betacf(a, b, x)));
  }
  const double small = std::exp(log_bt - std::log(b)) * betacf(b, a, 1.0 - x);
  return std::log1p(-std::min(small, 1.0));
}

double ibeta_reg(double a, double b, double x) {
  check_ibeta_args(a, b, x);
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_bt = a * std::log(x) + b * std::log1p(-x) - lbeta(a, b);
  if (use_direct_expansion(a, b, x)) {
    return std::min(1.0, std::exp(log_bt - std::log(a) + std::log(betacf(a, b, x))));
  }
  const double small = std::exp(log_bt - std::log(b)) * betacf(b, a, 1.0 - x);
  return std::max(0.0, 1.0 - small);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("sequence lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("pearson needs at least 3 samples");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("zero variance input");

  CorrelationResult result;
  result.n = n;
  result.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  // x_beta = nu/(nu + t^2) collapses to 1 - r^2; the factored form keeps
  // precision when |r| is close to 1.
  const double x_beta = std::clamp((1.0 - result.r) * (1.0 + result.r), 0.0, 1.0);
  const double nu = double(n - 2);
  result.log_p = ibeta_reg_log(nu / 2.0, 0.5, x_beta);
  result.p = std::min(1.0, std::exp(result.log_p));
  return result;
}

std::vector<DropBin> bin_drop_curve(const std::map<int, double>& fractions,
                                    const std::map<int, double>& drops,
                                    std::span<const double> edges) {
  if (edges.empty()) throw std::invalid_argument("at least one bin edge required");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) throw std::invalid_argument("bin edges must ascend strictly");
  }
  if (fractions.size() != drops.size() ||
      !std::equal(fractions.begin(), fractions.end(), drops.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw std::invalid_argument("fraction and drop maps must share the same categories");
  }

  std::vector<std::pair<std::size_t, double>> acc(edges.size(), {0, 0.0});
  for (const auto& [cat, f] : fractions) {
    if (f < edges.front()) throw std::invalid_argument("fraction below the first bin edge");
    const auto it = std::upper_bound(edges.begin(), edges.end(), f);
    const std::size_t bin = std::size_t(it - edges.begin()) - 1;
    ++acc[bin].first;
    acc[bin].second += drops.at(cat);
  }

  std::vector<DropBin> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (acc[i].first == 0) continue;
    DropBin bin;
    bin.lo = edges[i];
    bin.hi = i + 1 < edges.size() ? edges[i + 1] : std::numeric_limits<double>::infinity();
    bin.count = acc[i].first;
    bin.mean_drop = acc[i].second / double(acc[i].first);
    out.push_back(bin);
  }
  return out;
}

RunAggregate aggregate_runs(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate of no runs is undefined");
  RunAggregate out;
  for (double v : values) out.mean += v;
  out.mean /= double(values.size());
  if (values.size() == 1) return out;
  double ss = 0.0;
  for (double v : values) {
    const double d = v - out.mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / double(values.size() - 1));
  out.sem = sd / std::sqrt(double(values.size()));
  return out;
}

DeltaReport delta_report(const AccuracyReport& baseline, const AccuracyReport& treatment) {
  if (baseline.per_category.size() != treatment.per_category.size() ||
      !std::equal(baseline.per_category.begin(), baseline.per_category.end(),
                  treatment.per_category.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw std::invalid_argument("reports cover different category sets");
  }
  DeltaReport out;
  double ap_sum = 0.0;
  std::size_t ap_count = 0;
  for (const auto& [cat, base_row] : baseline.per_category) {
    const auto& treat_row = treatment.per_category.at(cat);
    DeltaReport::Row row;
    row.top1 = base_row.top1 - treat_row.top1;
    row.top5 = base_row.top5 - treat_row.top5;
    const auto base_ap = baseline.average_precision.find(cat);
    const auto treat_ap = treatment.average_precision.find(cat);
    if (base_ap != baseline.average_precision.end() &&
        treat_ap != treatment.average_precision.end()) {
      row.ap = base_ap->second - treat_ap->second;
      ap_sum += *row.ap;
      ++ap_count;
    }
    out.mean_top1 += row.top1;
    out.mean_top5 += row.top5;
    out.per_category[cat] = row;
  }
  const double cats = double(out.per_category.size());
  out.mean_top1 /= cats;
  out.mean_top5 /= cats;
  if (ap_count > 0) out.mean_ap = ap_sum / double(ap_count);
  return out;
}

}  // namespace facekit
