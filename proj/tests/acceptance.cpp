// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Each criterion prints exactly one PASS or
// FAIL line and carries its own wall-clock budget; the process exit code is
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "facekit/annotations.hpp"
#include "facekit/codec.hpp"
#include "facekit/eval.hpp"
#include "facekit/obfuscate.hpp"
#include "facekit/oracles.hpp"
#include "facekit/qc.hpp"
#include "facekit/raster.hpp"
#include "facekit/rng.hpp"
#include "facekit/stats.hpp"
#include "facekit/toyset.hpp"

namespace fs = std::filesystem;
using namespace facekit;

namespace {

struct Context {
  std::string cli;
  fs::path work;
};

using Problems = std::vector<std::string>;

void report(Problems& problems, bool ok, const std::string& message) {
  if (ok) return;
  if (problems.size() < 8) {
    problems.push_back(message);
  } else if (problems.size() == 8) {
    problems.push_back("further problems suppressed");
  }
}

ImageBuffer random_image(SplitMix64& rng, int h, int w) {
  ImageBuffer img(h, w);
  for (double& v : img.data) v = rng.uniform();
  return img;
}

// ---------------------------------------------------------------- criterion 1

void criterion_audit_fixture(Context&, Problems& problems) {
  // 20 categories with fixed per-category FP/FN counts, audited before and
  // after a cleanup pass. The averages must come out exactly.
  auto cell = [](int row, int k) {
    return BBox{k * 20.0, row * 20.0, k * 20.0 + 10.0, row * 20.0 + 10.0};
  };
  std::vector<ImageRecord> truth_recs;
  std::vector<ImageRecord> before_recs;
  std::vector<ImageRecord> after_recs;
  for (int c = 0; c < 20; ++c) {
    const int fp_before = 5 + (c < 10 ? 1 : 0);  // sums to 110
    const int fn_before = 2 + (c < 3 ? 1 : 0);   // sums to 43
    const int fp_after = 1 + (c < 5 ? 1 : 0);    // sums to 25
    const int fn_after = c < 19 ? 1 : 0;         // sums to 19

    std::vector<BBox> truth_boxes;
    for (int k = 0; k < 4; ++k) truth_boxes.push_back(cell(0, k));
    auto annotated = [&](int fn, int fp) {
      std::vector<BBox> v;
      for (int k = fn; k < 4; ++k) v.push_back(cell(0, k));  // misses the first fn
      for (int k = 0; k < fp; ++k) v.push_back(cell(1, k));  // spurious row
      return v;
    };

    char id[24];
    std::snprintf(id, sizeof id, "cat%02d.png", c);
    truth_recs.push_back({id, 1000, 1000, c, truth_boxes, {}});
    before_recs.push_back({id, 1000, 1000, c, annotated(fn_before, fp_before), {}});
    after_recs.push_back({id, 1000, 1000, c, annotated(fn_after, fp_after), {}});
  }
  const AnnotationSet truth(std::move(truth_recs));
  const AnnotationSet before(std::move(before_recs));
  const AnnotationSet after(std::move(after_recs));

  const AuditResult audit_before = audit_fp_fn(before, truth);
  const AuditResult audit_after = audit_fp_fn(after, truth);

  report(problems, audit_before.rows.size() == 20, "expected 20 before-rows");
  report(problems, audit_after.rows.size() == 20, "expected 20 after-rows");
  for (std::size_t c = 0; c < audit_before.rows.size() && c < 20; ++c) {
    const AuditRow& row = audit_before.rows[c];
    report(problems, row.false_positives == std::size_t(5 + (c < 10 ? 1 : 0)),
           "per-category FP drifted in row " + std::to_string(c));
    report(problems, row.false_negatives == std::size_t(2 + (c < 3 ? 1 : 0)),
           "per-category FN drifted in row " + std::to_string(c));
  }
  report(problems, audit_before.avg_false_positives == 5.50,
         "before FP average != 5.50 exactly");
  report(problems, audit_before.avg_false_negatives == 2.15,
         "before FN average != 2.15 exactly");
  report(problems, audit_after.avg_false_positives == 1.25,
         "after FP average != 1.25 exactly");
  report(problems, audit_after.avg_false_negatives == 0.95,
         "after FN average != 0.95 exactly");
}

// ---------------------------------------------------------------- criterion 2

void criterion_blur_invariants(Context&, Problems& problems) {
  SplitMix64 rng(0xacc20001ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const int h = 64;
    const int w = 64;
    const ImageBuffer img = random_image(rng, h, w);

    const int nboxes = trial < 2 ? 0 : rng.uniform_int(0, 4);
    std::vector<BBox> faces;
    for (int b = 0; b < nboxes; ++b) {
      const double x0 = rng.uniform(0.0, w - 2.0);
      const double y0 = rng.uniform(0.0, h - 2.0);
      faces.push_back(BBox{x0, y0, x0 + rng.uniform(1.0, double(w) - x0),
                           y0 + rng.uniform(1.0, double(h) - y0)});
    }

    const ImageBuffer out = blur_faces(img, faces);
    if (faces.empty()) {
      report(problems, out == img, "empty face list did not return the input bit for bit");
      continue;
    }

    // A constant image must stay constant through the whole pipeline.
    const ImageBuffer flat(h, w, 0.37);
    const ImageBuffer flat_out = blur_faces(flat, faces);
    for (double v : flat_out.data) {
      if (std::fabs(v - 0.37) > 1e-12) {
        report(problems, false, "constant image drifted by more than 1e-12");
        break;
      }
    }

    // Rebuild the result with none of the library's fast paths: enlarge by
    // hand, test pixel centers against the boxes directly, convolve with the
    // full 2-D kernel, and mix without the composite helper.
    std::vector<BBox> big;
    double d_max = 0.0;
    for (const BBox& b : faces) {
      const double bw = b.x1 - b.x0;
      const double bh = b.y1 - b.y0;
      const double diag = std::sqrt(bw * bw + bh * bh);
      d_max = std::max(d_max, diag);
      const double pad = diag / 10.0;
      big.push_back(BBox{std::max(0.0, b.x0 - pad), std::max(0.0, b.y0 - pad),
                         std::min(double(w), b.x1 + pad), std::min(double(h), b.y1 + pad)});
    }
    const double sigma = d_max / 10.0;

    MaskBuffer mask(h, w);
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        const double x = j + 0.5;
        const double y = i + 0.5;
        for (const BBox& b : big) {
          if (x >= b.x0 && x < b.x1 && y >= b.y0 && y < b.y1) {
            mask.at(i, j) = 1.0;
            break;
          }
        }
      }
    }
    const MaskBuffer mask_blur = oracles::direct_gaussian_blur(mask, sigma);
    const ImageBuffer img_blur = oracles::direct_gaussian_blur(img, sigma);
    double worst = 0.0;
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        const double m = mask_blur.at(i, j);
        for (int c = 0; c < 3; ++c) {
          const double want = m * img_blur.at(i, j, c) + (1.0 - m) * img.at(i, j, c);
          worst = std::max(worst, std::fabs(out.at(i, j, c) - want));
        }
      }
    }
    report(problems, worst <= 1e-9,
           "blurred image deviates from the direct-convolution rebuild by " +
               std::to_string(worst));

    // Pixels far from every enlarged box must pass through untouched.
    const int reach = int(std::ceil(3.0 * sigma)) + 1;
    bool far_ok = true;
    for (int i = 0; i < h && far_ok; ++i) {
      for (int j = 0; j < w && far_ok; ++j) {
        const double x = j + 0.5;
        const double y = i + 0.5;
        double dist = std::numeric_limits<double>::infinity();
        for (const BBox& b : big) {
          const double dx = std::max({b.x0 - x, x - b.x1, 0.0});
          const double dy = std::max({b.y0 - y, y - b.y1, 0.0});
          dist = std::min(dist, std::max(dx, dy));
        }
        if (dist <= double(reach)) continue;
        for (int c = 0; c < 3; ++c) {
          if (std::fabs(out.at(i, j, c) - img.at(i, j, c)) > 1.0 / 255.0) {
            report(problems, false, "pixel beyond the blur reach changed by more than 1/255");
            far_ok = false;
            break;
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 3

void criterion_overlay(Context&, Problems& problems) {
  SplitMix64 rng(0xacc30001ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const int h = 32;
    const int w = 32;
    ImageBuffer img(h, w);
    for (double& v : img.data) v = rng.uniform(0.1, 0.9);  // never the overlay color

    std::vector<BBox> faces;
    const int nboxes = rng.uniform_int(1, 3);
    for (int b = 0; b < nboxes; ++b) {
      const double x0 = rng.uniform(0.0, w - 1.0);
      const double y0 = rng.uniform(0.0, h - 1.0);
      faces.push_back(BBox{x0, y0, x0 + rng.uniform(0.5, double(w) - x0),
                           y0 + rng.uniform(0.5, double(h) - y0)});
    }

    const ImageBuffer out = overlay_faces(img, faces, kRedOverlayColor);
    const double color[3] = {1.0, 0.0, 0.0};

    double actual_sum[3] = {0, 0, 0};
    double expected_sum[3] = {0, 0, 0};
    bool support_ok = true;
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        const double x = j + 0.5;
        const double y = i + 0.5;
        bool covered = false;
        for (const BBox& b : faces) {
          if (x >= b.x0 && x < b.x1 && y >= b.y0 && y < b.y1) {
            covered = true;
            break;
          }
        }
        bool changed = false;
        for (int c = 0; c < 3; ++c) {
          actual_sum[c] += out.at(i, j, c);
          expected_sum[c] += covered ? color[c] : img.at(i, j, c);
          if (out.at(i, j, c) != img.at(i, j, c)) changed = true;
        }
        if (changed != covered) support_ok = false;
      }
    }
    report(problems, support_ok, "changed pixels differ from the covered pixel set");
    const double n = double(h) * double(w);
    for (int c = 0; c < 3; ++c) {
      report(problems, actual_sum[c] / n == expected_sum[c] / n,
             "whole-image channel mean is not exact");
    }
  }
}

// ---------------------------------------------------------------- criterion 4

void criterion_enlarge_table(Context&, Problems& problems) {
  struct Case {
    BBox box;
    int h;
    int w;
    BBox expected;
  };
  const Case table[20] = {
      {{10, 10, 40, 50}, 100, 100, {5, 5, 45, 55}},
      {{0, 0, 30, 40}, 100, 100, {0, 0, 35, 45}},
      {{90, 90, 99, 99}, 100, 100, {88.72720779386421, 88.72720779386421, 100, 100}},
      {{0, 0, 100, 100}, 100, 100, {0, 0, 100, 100}},
      {{20, 20, 25, 32}, 100, 100, {18.7, 18.7, 26.3, 33.3}},
      {{1, 1, 2, 2}, 10, 10, {0.8585786437626906, 0.8585786437626906, 2.1414213562373097, 2.1414213562373097}},
      {{0, 5, 8, 20}, 30, 30, {0, 3.3, 9.7, 21.7}},
      {{12, 5, 32, 26}, 40, 40, {9.1, 2.1, 34.9, 28.9}},
      {{3, 4, 12, 16}, 20, 20, {1.5, 2.5, 13.5, 17.5}},
      {{0, 0, 6, 8}, 8, 8, {0, 0, 7, 8}},
      {{2, 2, 14, 18}, 16, 16, {0, 0, 16, 16}},
      {{50, 10, 57, 34}, 60, 60, {47.5, 7.5, 59.5, 36.5}},
      {{5, 0, 15, 24}, 25, 30, {2.4, 0, 17.6, 25}},
      {{1, 2, 17, 32}, 40, 20, {0, 0, 20, 35.4}},
      {{10, 10, 28, 34}, 50, 50, {7, 7, 31, 37}},
      {{0.5, 0.5, 3.5, 4.5}, 6, 6, {0, 0, 4, 5}},
      {{10, 20, 31, 48}, 100, 100, {6.5, 16.5, 34.5, 51.5}},
      {{2, 3, 35, 47}, 50, 40, {0, 0, 40, 50}},
      {{60, 10, 96, 87}, 100, 100, {51.5, 1.5, 100, 95.5}},
      {{7, 6, 46, 86}, 90, 60, {0, 0, 54.9, 90}},
  };
  for (int t = 0; t < 20; ++t) {
    const Case& c = table[t];
    const BBox got = enlarge_box(c.box, c.h, c.w);
    const double err = std::max({std::fabs(got.x0 - c.expected.x0), std::fabs(got.y0 - c.expected.y0),
                                 std::fabs(got.x1 - c.expected.x1), std::fabs(got.y1 - c.expected.y1)});
    report(problems, err <= 1e-9,
           "table case " + std::to_string(t) + " off by " + std::to_string(err));
  }
}

// ---------------------------------------------------------------- criterion 5

void criterion_union_area(Context&, Problems& problems) {
  SplitMix64 rng(0xacc50001ULL);
  const BBox frame{0, 0, 30, 30};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 12);
    std::vector<BBox> boxes;
    for (int b = 0; b < n; ++b) {
      const int ix = rng.uniform_int(0, 119);
      const int iy = rng.uniform_int(0, 119);
      const int iw = rng.uniform_int(1, 120 - ix);
      const int ih = rng.uniform_int(1, 120 - iy);
      boxes.push_back(BBox{ix * 0.25, iy * 0.25, (ix + iw) * 0.25, (iy + ih) * 0.25});
    }
    const double geometric = rect_union_area(boxes);
    const double counted = oracles::grid_union_area(boxes, 30.0, 30.0, 0.25);
    report(problems, geometric == counted,
           "union area " + std::to_string(geometric) + " != grid count " + std::to_string(counted));

    const double cover = coverage_fraction(frame, boxes);
    report(problems, cover >= 0.0 && cover <= 1.0, "coverage fraction escaped [0,1]");
  }
}

// ---------------------------------------------------------------- criterion 6

void criterion_average_precision(Context&, Problems& problems) {
  long long cases = 0;
  long long mismatches = 0;
  for (int n = 1; n <= 8; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      for (unsigned pattern = 1; pattern < (1u << n); ++pattern) {
        std::vector<ScoredPositive> items;
        std::vector<oracles::ScoredItem> mirror;
        items.reserve(std::size_t(n));
        mirror.reserve(std::size_t(n));
        for (int i = 0; i < n; ++i) {
          const char id[2] = {char('a' + i), '\0'};
          const double score = double(perm[std::size_t(i)]);
          const bool positive = (pattern >> i) & 1u;
          items.push_back({id, score, positive});
          mirror.push_back({id, score, positive});
        }
        const double fast = average_precision_from_scores(std::move(items));
        const double slow = oracles::brute_force_average_precision(std::move(mirror));
        if (std::fabs(fast - slow) > 1e-12) {
          ++mismatches;
          report(problems, false, "ranking of " + std::to_string(n) + " items diverged");
        }
        ++cases;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  report(problems, cases == 10971169LL, "case sweep miscounted: " + std::to_string(cases));
  report(problems, mismatches == 0, std::to_string(mismatches) + " mismatched cases");
}

// ---------------------------------------------------------------- criterion 7

void criterion_correlation(Context&, Problems& problems) {
  SplitMix64 rng(0xacc70001ULL);
  int tiny_p_cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool extreme = trial >= 70;  // forces p far below 1e-40
    const int n = extreme ? 200 + rng.uniform_int(0, 800) : 5 + rng.uniform_int(0, 995);
    const double slope = extreme ? 1.0 : rng.uniform(-2.0, 2.0);
    const double noise = extreme ? 1e-4 : rng.uniform(0.1, 2.0);

    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i < n; ++i) {
      x.push_back(rng.uniform(-1.0, 1.0));
      y.push_back(slope * x.back() + noise * rng.uniform(-1.0, 1.0));
    }

    const CorrelationResult res = pearson(x, y);
    const oracles::PearsonReference ref = oracles::pearson_reference(x, y);

    report(problems, std::fabs(res.r - double(ref.r)) <= 1e-10,
           "r deviates by more than 1e-10 at n=" + std::to_string(n));
    if (double(ref.p) >= 1e-300) {
      report(problems, std::fabs(res.p - double(ref.p)) <= 0.05 * double(ref.p),
             "p deviates by more than 5% at n=" + std::to_string(n));
    } else {
      report(problems, std::fabs(res.log_p - double(ref.log_p)) <= std::log(1.05),
             "log p deviates by more than log(1.05) at n=" + std::to_string(n));
    }
    if (res.log_p < std::log(1e-40)) ++tiny_p_cases;
  }
  report(problems, tiny_p_cases >= 10,
         "only " + std::to_string(tiny_p_cases) + " cases reached p < 1e-40");
}

// ---------------------------------------------------------------- criterion 8

void criterion_accuracy_metrics(Context&, Problems& problems) {
  SplitMix64 rng(0xacc80001ULL);
  auto make_records = [&rng]() {
    std::vector<PredictionRecord> records;
    for (int i = 0; i < 1000; ++i) {
      int cats[10];
      for (int c = 0; c < 10; ++c) cats[c] = c;
      for (int c = 9; c > 0; --c) std::swap(cats[c], cats[rng.uniform_int(0, c)]);
      PredictionRecord rec;
      char id[16];
      std::snprintf(id, sizeof id, "img%04d", i);
      rec.image_id = id;
      rec.label = i % 10;
      double score = rng.uniform(0.9, 1.0);
      for (int c = 0; c < 6; ++c) {
        rec.ranked.emplace_back(cats[c], score);
        score -= rng.uniform(0.01, 0.1);
      }
      records.push_back(std::move(rec));
    }
    return records;
  };
  const PredictionSet preds(make_records());
  const PredictionSet other(make_records());

  // Recount top-k hits from scratch, re-sorting each record's scores.
  auto recount = [](const PredictionSet& set, int k) {
    std::map<int, std::pair<std::size_t, std::size_t>> per_label;
    std::size_t hits = 0;
    for (const PredictionRecord& rec : set.records()) {
      auto ranked = rec.ranked;
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
      bool hit = false;
      for (int i = 0; i < k; ++i) {
        if (ranked[std::size_t(i)].first == rec.label) hit = true;
      }
      auto& [images, label_hits] = per_label[rec.label];
      ++images;
      if (hit) {
        ++hits;
        ++label_hits;
      }
    }
    std::map<int, double> per_label_acc;
    for (const auto& [label, c] : per_label) per_label_acc[label] = double(c.second) / double(c.first);
    return std::pair{double(hits) / double(set.size()), per_label_acc};
  };

  const auto [top1_bf, per1_bf] = recount(preds, 1);
  const auto [top5_bf, per5_bf] = recount(preds, 5);
  const double top1 = top_k_accuracy(preds, 1);
  const double top5 = top_k_accuracy(preds, 5);
  report(problems, std::fabs(top1 - top1_bf) <= 1e-12, "top-1 disagrees with the recount");
  report(problems, std::fabs(top5 - top5_bf) <= 1e-12, "top-5 disagrees with the recount");
  report(problems, top1 <= top5, "top-1 exceeds top-5");

  const std::map<int, double> per1 = per_category_accuracy(preds, 1);
  report(problems, per1.size() == per1_bf.size(), "per-category key sets differ");
  for (const auto& [label, acc] : per1_bf) {
    const auto it = per1.find(label);
    report(problems, it != per1.end() && std::fabs(it->second - acc) <= 1e-12,
           "per-category accuracy disagrees for label " + std::to_string(label));
  }

  const AccuracyReport rep = accuracy_report(preds);
  double weighted1 = 0.0;
  double weighted5 = 0.0;
  std::size_t images = 0;
  for (const auto& [label, row] : rep.per_category) {
    weighted1 += double(row.images) * row.top1;
    weighted5 += double(row.images) * row.top5;
    images += row.images;
  }
  report(problems, images == preds.size(), "per-category images do not cover the set");
  report(problems, std::fabs(weighted1 / double(images) - rep.top1) <= 1e-12,
         "weighted per-category top-1 mean misses the overall value");
  report(problems, std::fabs(weighted5 / double(images) - rep.top5) <= 1e-12,
         "weighted per-category top-5 mean misses the overall value");

  const AccuracyReport rep_other = accuracy_report(other);
  const DeltaReport delta = delta_report(rep, rep_other);
  double sum1 = 0.0;
  double sum5 = 0.0;
  for (const auto& [label, row] : delta.per_category) {
    const double want1 = rep.per_category.at(label).top1 - rep_other.per_category.at(label).top1;
    const double want5 = rep.per_category.at(label).top5 - rep_other.per_category.at(label).top5;
    report(problems, std::fabs(row.top1 - want1) <= 1e-12, "top-1 delta drifted");
    report(problems, std::fabs(row.top5 - want5) <= 1e-12, "top-5 delta drifted");
    sum1 += row.top1;
    sum5 += row.top5;
  }
  report(problems,
         std::fabs(delta.mean_top1 - sum1 / double(delta.per_category.size())) <= 1e-12,
         "mean top-1 delta is not the category mean");
  report(problems,
         std::fabs(delta.mean_top5 - sum5 / double(delta.per_category.size())) <= 1e-12,
         "mean top-5 delta is not the category mean");
}

// ---------------------------------------------------------------- criterion 9

void criterion_annotation_sessions(Context&, Problems& problems) {
  auto build_images = [](const std::vector<std::size_t>& gold_at) {
    std::vector<SessionImage> images;
    for (std::size_t i = 0; i < kSessionSize; ++i) {
      char id[16];
      std::snprintf(id, sizeof id, "img%02zu", i);
      const bool gold = std::find(gold_at.begin(), gold_at.end(), i) != gold_at.end();
      images.push_back({id, {{2, 2, 6, 6}}, gold});
    }
    return images;
  };
  const std::vector<BBox> wrong{{30, 30, 31, 31}};

  // Scripted run: mistake, restart, then a clean completion.
  QcSession s = make_session(build_images({5, 20, 40}));
  for (int i = 0; i < 5; ++i) s = session_step(s, s.images[s.index].truth);
  s = session_step(s, wrong);
  report(problems, s.lives == 1 && s.index == 5, "first gold mistake must cost a life in place");
  report(problems,
         !s.events.empty() && s.events.back().outcome == SessionOutcome::gold_mistake &&
             s.events.back().revealed == s.images[5].truth,
         "gold mistake must reveal the truth in the event log");
  const std::size_t events_before_restart = s.events.size();
  s = session_step(s, wrong);
  report(problems, s.index == 0 && s.lives == kStartLives, "losing the last life must restart");
  report(problems, restart_count(s) == 1, "restart not recorded");
  report(problems, s.events.size() == events_before_restart + 2, "restart must keep the log");
  for (int i = 0; i < 50; ++i) s = session_step(s, s.images[s.index].truth);
  report(problems, s.completed, "clean pass after restart must complete");
  report(problems, restart_count(s) == 1, "completed session must keep its restart count");

  // Fuzzed runs: restarts equal independently tracked life exhaustions.
  SplitMix64 rng(0xacc90001ULL);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::size_t> gold_at;
    while (gold_at.size() < kGoldPerSession) {
      const std::size_t g = std::size_t(rng.uniform_int(0, int(kSessionSize) - 1));
      if (std::find(gold_at.begin(), gold_at.end(), g) == gold_at.end()) gold_at.push_back(g);
    }
    QcSession fuzz = make_session(build_images(gold_at));
    int lives = kStartLives;
    std::size_t exhaustions = 0;
    int steps = 0;
    while (!fuzz.completed && steps++ < 4000) {
      const bool gold = fuzz.images[fuzz.index].gold;
      const bool mistake = rng.chance(0.25);
      fuzz = session_step(fuzz, mistake ? std::span<const BBox>(wrong)
                                        : std::span<const BBox>(fuzz.images[fuzz.index].truth));
      if (gold && mistake) {
        if (--lives == 0) {
          ++exhaustions;
          lives = kStartLives;
        }
      }
    }
    if (!fuzz.completed) {
      report(problems, false, "fuzzed session failed to complete");
      break;
    }
    if (restart_count(fuzz) != exhaustions) {
      report(problems, false,
             "restarts " + std::to_string(restart_count(fuzz)) + " != exhaustions " +
                 std::to_string(exhaustions));
      break;
    }
  }
}

// --------------------------------------------------------------- criterion 10

void criterion_cli_determinism(Context& ctx, Problems& problems) {
  const fs::path root = ctx.work / "cli";
  fs::remove_all(root);
  fs::create_directories(root);

  const ToyDataset toy = make_toy_dataset(20);
  write_toy_dataset(toy, (root / "data").string());

  auto run = [&](const std::string& args, const fs::path& stdout_file) {
    const std::string command = "\"" + ctx.cli + "\" " + args + " > \"" + stdout_file.string() +
                                "\" 2> /dev/null";
    return std::system(command.c_str());
  };
  const std::string common = "blur --annotations \"" + (root / "data" / "annotations.jsonl").string() +
                             "\" --images \"" + (root / "data" / "images").string() + "\"";
  const int rc1 = run(common + " --out \"" + (root / "out1").string() + "\" --jobs 1",
                      root / "report1.txt");
  const int rc8 = run(common + " --out \"" + (root / "out8").string() + "\" --jobs 8",
                      root / "report8.txt");
  report(problems, rc1 == 0, "single-thread run exited nonzero");
  report(problems, rc8 == 0, "eight-thread run exited nonzero");
  if (rc1 != 0 || rc8 != 0) return;

  report(problems,
         read_binary_file((root / "report1.txt").string()) ==
             read_binary_file((root / "report8.txt").string()),
         "run reports differ between thread counts");

  std::size_t outputs = 0;
  for (const ImageRecord& rec : toy.set.records()) {
    const fs::path p1 = root / "out1" / rec.image_id;
    const fs::path p8 = root / "out8" / rec.image_id;
    if (!fs::exists(p1) || !fs::exists(p8)) {
      report(problems, false, "missing output for " + rec.image_id);
      continue;
    }
    ++outputs;
    if (read_binary_file(p1.string()) != read_binary_file(p8.string())) {
      report(problems, false, "output bytes differ for " + rec.image_id);
    }
  }
  report(problems, outputs == toy.set.size(), "not every image produced an output");

  // No stray files beyond the expected outputs.
  std::size_t files1 = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "out1")) {
    if (entry.is_regular_file()) ++files1;
  }
  report(problems, files1 == toy.set.size(), "unexpected extra files in the output tree");
}

// -------------------------------------------------------------------- driver

struct Criterion {
  int number;
  const char* label;
  double budget_seconds;
  void (*run)(Context&, Problems&);
};

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli") ctx.cli = argv[i + 1];
    if (arg == "--work") ctx.work = argv[i + 1];
  }
  if (ctx.cli.empty() || ctx.work.empty()) {
    std::fprintf(stderr, "usage: acceptance --cli <facekit binary> --work <scratch dir>\n");
    return 64;
  }
  fs::create_directories(ctx.work);

  const Criterion criteria[] = {
      {1, "detection audit averages on the 20-category fixture", 1.0, criterion_audit_fixture},
      {2, "feathered blur invariants against direct convolution", 30.0, criterion_blur_invariants},
      {3, "overlay mean and changed-pixel support", 5.0, criterion_overlay},
      {4, "box enlargement table", 1.0, criterion_enlarge_table},
      {5, "union area against grid counting", 10.0, criterion_union_area},
      {6, "average precision against exhaustive brute force", 20.0, criterion_average_precision},
      {7, "correlation against wide-precision reference", 10.0, criterion_correlation},
      {8, "accuracy metrics against recounts", 5.0, criterion_accuracy_metrics},
      {9, "annotation session lives and restarts", 5.0, criterion_annotation_sessions},
      {10, "CLI blur byte-determinism across thread counts", 10.0, criterion_cli_determinism},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Problems problems;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(ctx, problems);
    } catch (const std::exception& e) {
      problems.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= criterion.budget_seconds) {
      problems.push_back("exceeded the " + std::to_string(criterion.budget_seconds) + "s budget");
    }

    if (problems.empty()) {
      std::printf("PASS criterion %d: %s (%.2fs)\n", criterion.number, criterion.label, elapsed);
    } else {
      ++failed;
      std::string detail = problems.front();
      if (problems.size() > 1) {
        detail += " (+" + std::to_string(problems.size() - 1) + " more)";
      }
      std::printf("FAIL criterion %d: %s (%.2fs) - %s\n", criterion.number, criterion.label,
                  elapsed, detail.c_str());
    }
  }
  return failed;
}
