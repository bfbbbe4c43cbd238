// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Every subcommand writes deterministic,
// line-delimited reports: identical inputs and flags produce identical bytes
// no matter how many worker threads run.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "facekit/annotations.hpp"
#include "facekit/eval.hpp"
#include "facekit/obfuscate.hpp"
#include "facekit/oracles.hpp"
#include "facekit/qc.hpp"
#include "facekit/rng.hpp"
#include "facekit/stats.hpp"

namespace {

using namespace facekit;

std::string fmt_double(double v, bool precise) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  if (precise) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::string(buf);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + out_path);
  out << content;
}

/// Two-column "key<TAB>value" file; keys must be unique.
std::map<std::string, double> read_keyed_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    const std::string where = path + ":" + std::to_string(line_no);
    if (tab == std::string::npos) throw ParseError(where + ": expected key<TAB>value");
    const std::string key = line.substr(0, tab);
    double value = 0.0;
    const char* begin = line.c_str() + tab + 1;
    const char* end = line.c_str() + line.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
      throw ParseError(where + ": malformed number");
    if (!out.emplace(key, value).second) throw ValidationError(where + ": duplicate key " + key);
  }
  return out;
}

struct ObfuscateArgs {
  std::string annotations;
  std::string images;
  std::string out;
  int jobs = 1;
  bool png = false;
  int quality = 95;
  std::string sigma_from = "original";
  std::string color = "mean";
  bool enlarge = false;
};

OverlayColor parse_color(const std::string& name) {
  if (name == "mean") return kMeanOverlayColor;
  if (name == "red") return kRedOverlayColor;
  if (name == "green") return kGreenOverlayColor;
  if (name == "blue") return kBlueOverlayColor;
  OverlayColor c;
  std::istringstream in(name);
  char c1 = 0;
  char c2 = 0;
  if (in >> c.r >> c1 >> c.g >> c2 >> c.b && c1 == ',' && c2 == ',' && in.eof() &&
      c.r >= 0 && c.r <= 1 && c.g >= 0 && c.g <= 1 && c.b >= 0 && c.b <= 1) {
    return c;
  }
  throw std::invalid_argument("color must be mean|red|green|blue or r,g,b in [0,1]");
}

int run_obfuscate(const ObfuscateArgs& args, ObfuscationMode mode) {
  const AnnotationLoadResult loaded = load_annotations(args.annotations);
  if (loaded.dropped_boxes > 0)
    std::cerr << "warning: dropped " << loaded.dropped_boxes << " degenerate boxes\n";

  ObfuscateOptions options;
  options.mode = mode;
  options.jobs = args.jobs;
  options.force_png = args.png;
  options.jpeg_quality = args.quality;
  if (args.sigma_from == "original") {
    options.sigma_source = SigmaSource::original_boxes;
  } else if (args.sigma_from == "enlarged") {
    options.sigma_source = SigmaSource::enlarged_boxes;
  } else {
    throw std::invalid_argument("--sigma-from must be original or enlarged");
  }
  options.color = parse_color(args.color);
  options.overlay_enlarge = args.enlarge;

  const ObfuscationReport report = obfuscate_dataset(loaded.set, args.images, args.out, options);
  for (const std::string& id : report.skipped) std::cerr << "warning: missing image " << id << "\n";

  std::string text;
  text += "processed\t" + std::to_string(report.processed) + "\n";
  text += "copied\t" + std::to_string(report.copied) + "\n";
  text += "skipped\t" + std::to_string(report.skipped.size()) + "\n";
  text += "warnings\t" + std::to_string(report.warnings) + "\n";
  std::cout << text;
  return report.skipped.empty() ? 0 : 2;
}

struct StatsArgs {
  std::string annotations;
  std::string hierarchy;
  std::string out;
  std::string plot;
  bool precise = false;
  bool raw_boxes = false;
};

int run_stats_faces(const StatsArgs& args) {
  const AnnotationLoadResult loaded = load_annotations(args.annotations);
  Hierarchy hierarchy;
  if (!args.hierarchy.empty()) hierarchy = load_hierarchy(args.hierarchy);
  const FaceStatsReport report = dataset_face_stats(loaded.set, hierarchy);

  std::string text;
  text += "summary\ttotal_images\t" + std::to_string(report.total_images) + "\n";
  text += "summary\timages_with_faces\t" + std::to_string(report.images_with_faces) + "\n";
  std::string plot;
  for (const auto& row : report.categories) {
    text += "category\t" + std::to_string(row.category) + "\t" + row.name + "\t" +
            std::to_string(row.images) + "\t" + std::to_string(row.with_faces) + "\t" +
            fmt_double(row.fraction, args.precise) + "\n";
    plot += row.name + "\t" + fmt_double(row.fraction, args.precise) + "\n";
  }
  for (const auto& [faces, count] : report.histogram)
    text += "histogram\t" + std::to_string(faces) + "\t" + std::to_string(count) + "\n";
  for (const auto& row : report.supercategories) {
    text += "supercategory\t" + row.name + "\t" + std::to_string(row.categories) + "\t" +
            std::to_string(row.images) + "\t" + std::to_string(row.with_faces) + "\t" +
            fmt_double(row.fraction, args.precise) + "\n";
  }
  emit(args.out, text);
  if (!args.plot.empty()) emit(args.plot, plot);
  return 0;
}

int run_stats_overlap(const StatsArgs& args) {
  const AnnotationLoadResult loaded = load_annotations(args.annotations);
  const std::map<int, double> overlap = category_overlap(loaded.set);
  std::string text;
  std::string plot;
  for (const auto& [cat, value] : overlap) {
    const std::string& name = loaded.set.category_name(cat);
    text += "overlap\t" + std::to_string(cat) + "\t" + name + "\t" +
            fmt_double(value, args.precise) + "\n";
    plot += name + "\t" + fmt_double(value, args.precise) + "\n";
  }
  emit(args.out, text);
  if (!args.plot.empty()) emit(args.plot, plot);
  return 0;
}

struct EvalAccuracyArgs {
  std::string predictions;
  std::string out;
  bool with_ap = false;
  bool precise = false;
};

std::string accuracy_text(const AccuracyReport& report, bool with_ap, bool precise) {
  std::string text;
  text += "summary\ttop1\t" + fmt_double(report.top1, precise) + "\n";
  text += "summary\ttop5\t" + fmt_double(report.top5, precise) + "\n";
  for (const auto& [cat, row] : report.per_category) {
    text += "category\t" + std::to_string(cat) + "\t" + std::to_string(row.images) + "\t" +
            fmt_double(row.top1, precise) + "\t" + fmt_double(row.top5, precise);
    if (with_ap) text += "\t" + fmt_double(report.average_precision.at(cat), precise);
    text += "\n";
  }
  return text;
}

int run_eval_accuracy(const EvalAccuracyArgs& args) {
  const PredictionSet preds = load_predictions(args.predictions);
  const AccuracyReport report = accuracy_report(preds, args.with_ap);
  emit(args.out, accuracy_text(report, args.with_ap, args.precise));
  return 0;
}

struct EvalDeltaArgs {
  std::string baseline;
  std::string treatment;
  std::string out;
  bool with_ap = false;
  bool precise = false;
};

int run_eval_delta(const EvalDeltaArgs& args) {
  const AccuracyReport baseline =
      accuracy_report(load_predictions(args.baseline), args.with_ap);
  const AccuracyReport treatment =
      accuracy_report(load_predictions(args.treatment), args.with_ap);
  const DeltaReport delta = delta_report(baseline, treatment);

  std::string text;
  text += "summary\tmean_top1_delta\t" + fmt_double(delta.mean_top1, args.precise) + "\n";
  text += "summary\tmean_top5_delta\t" + fmt_double(delta.mean_top5, args.precise) + "\n";
  if (delta.mean_ap)
    text += "summary\tmean_ap_delta\t" + fmt_double(*delta.mean_ap, args.precise) + "\n";
  for (const auto& [cat, row] : delta.per_category) {
    text += "category\t" + std::to_string(cat) + "\t" + fmt_double(row.top1, args.precise) + "\t" +
            fmt_double(row.top5, args.precise);
    if (row.ap) text += "\t" + fmt_double(*row.ap, args.precise);
    text += "\n";
  }
  emit(args.out, text);
  return 0;
}

struct EvalCorrelateArgs {
  std::string x_path;
  std::string y_path;
  std::string out;
  bool precise = false;
};

int run_eval_correlate(const EvalCorrelateArgs& args) {
  const std::map<std::string, double> xs = read_keyed_values(args.x_path);
  const std::map<std::string, double> ys = read_keyed_values(args.y_path);
  if (xs.size() != ys.size() ||
      !std::equal(xs.begin(), xs.end(), ys.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw ValidationError("the two files must cover the same keys");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [key, v] : xs) {
    x.push_back(v);
    y.push_back(ys.at(key));
  }
  const CorrelationResult result = pearson(x, y);
  std::string text;
  text += "n\t" + std::to_string(result.n) + "\n";
  text += "r\t" + fmt_double(result.r, args.precise) + "\n";
  text += "p\t" + fmt_double(result.p, args.precise) + "\n";
  text += "log_p\t" + fmt_double(result.log_p, args.precise) + "\n";
  emit(args.out, text);
  return 0;
}

struct EvalBinsArgs {
  std::string fractions;
  std::string drops;
  std::string out;
  std::vector<double> edges{0.0, 1.0, 2.0, 4.0, 8.0};  // percent
  bool precise = false;
};

int run_eval_bins(const EvalBinsArgs& args) {
  const std::map<std::string, double> fractions = read_keyed_values(args.fractions);
  const std::map<std::string, double> drops = read_keyed_values(args.drops);
  // Fractions arrive in [0,1]; edges are percentages.
  std::map<int, double> f_by_index;
  std::map<int, double> d_by_index;
  int index = 0;
  for (const auto& [key, v] : fractions) {
    const auto it = drops.find(key);
    if (it == drops.end()) throw ValidationError("key missing from drops file: " + key);
    f_by_index[index] = v * 100.0;
    d_by_index[index] = it->second;
    ++index;
  }
  if (drops.size() != fractions.size())
    throw ValidationError("the two files must cover the same keys");

  const std::vector<DropBin> bins = bin_drop_curve(f_by_index, d_by_index, args.edges);
  std::string text;
  for (const DropBin& bin : bins) {
    text += "bin\t" + fmt_double(bin.lo, args.precise) + "\t" + fmt_double(bin.hi, args.precise) +
            "\t" + std::to_string(bin.count) + "\t" + fmt_double(bin.mean_drop, args.precise) +
            "\n";
  }
  emit(args.out, text);
  return 0;
}

struct QcAuditArgs {
  std::string annotations;
  std::string truth;
  std::string out;
  double iou_threshold = kDefaultAuditIou;
  bool precise = false;
};

int run_qc_audit(const QcAuditArgs& args) {
  const AnnotationLoadResult annotations = load_annotations(args.annotations);
  const AnnotationLoadResult truth = load_annotations(args.truth);
  const AuditResult result = audit_fp_fn(annotations.set, truth.set, args.iou_threshold);

  std::string text;
  for (const AuditRow& row : result.rows) {
    text += "category\t" + std::to_string(row.category) + "\t" + row.name + "\t" +
            std::to_string(row.images) + "\t" + std::to_string(row.false_positives) + "\t" +
            std::to_string(row.false_negatives) + "\n";
  }
  text += "average\tfalse_positives\t" + fmt_double(result.avg_false_positives, args.precise) + "\n";
  text += "average\tfalse_negatives\t" + fmt_double(result.avg_false_negatives, args.precise) + "\n";
  emit(args.out, text);
  return 0;
}

struct QcMergeArgs {
  std::string detector;
  std::string log;
  std::string out;
};

int run_qc_merge(const QcMergeArgs& args) {
  const AnnotationLoadResult detector = load_annotations(args.detector);
  const std::vector<WorkerSubmission> log = load_submission_log(args.log);
  const AnnotationSet worker = worker_set_from_log(detector.set, log);
  const AnnotationSet merged = merge_worker_edits(detector.set, worker);
  save_annotations(merged, args.out);
  std::cout << "merged\t" << merged.size() << "\nedited\t" << worker.size() << "\n";
  return 0;
}

struct QcSimulateArgs {
  std::string annotations;
  std::string out;
  std::size_t sessions = 10;
  std::uint64_t seed = 1;
  double error_rate = 0.1;
  double iou_threshold = kDefaultGoldIou;
  std::size_t max_steps = 10000;
};

int run_qc_simulate(const QcSimulateArgs& args) {
  if (!(args.error_rate >= 0.0 && args.error_rate < 1.0))
    throw std::invalid_argument("--error-rate must lie in [0,1)");
  const AnnotationLoadResult loaded = load_annotations(args.annotations);
  if (loaded.set.size() < kSessionSize)
    throw ValidationError("need at least " + std::to_string(kSessionSize) + " annotated images");

  SplitMix64 rng(args.seed);
  std::string text;
  std::size_t total_mistakes = 0;
  std::size_t total_restarts = 0;
  for (std::size_t s = 0; s < args.sessions; ++s) {
    std::vector<SessionImage> images;
    for (std::size_t i = 0; i < kSessionSize; ++i) {
      const ImageRecord& rec = loaded.set.records()[i];
      images.push_back({rec.image_id, rec.faces, false});
    }
    for (std::size_t g = 0; g < kGoldPerSession;) {
      const std::size_t pos = std::size_t(rng.uniform_int(0, int(kSessionSize) - 1));
      if (images[pos].gold) continue;
      images[pos].gold = true;
      ++g;
    }

    QcSession session = make_session(std::move(images), args.iou_threshold);
    std::size_t steps = 0;
    while (!session.completed && steps < args.max_steps) {
      std::vector<BBox> submission = session.images[session.index].truth;
      if (rng.chance(args.error_rate)) {
        if (!submission.empty() && rng.chance(0.5)) {
          submission.pop_back();
        } else {
          const double x = rng.uniform(0.0, 30.0);
          const double y = rng.uniform(0.0, 30.0);
          submission.push_back({x, y, x + 5.0, y + 5.0});
        }
      }
      session = session_step(std::move(session), submission);
      ++steps;
    }

    std::size_t mistakes = 0;
    for (const SessionEvent& e : session.events)
      if (e.outcome == SessionOutcome::gold_mistake) ++mistakes;
    const std::size_t restarts = restart_count(session);
    total_mistakes += mistakes;
    total_restarts += restarts;
    text += "session\t" + std::to_string(s) + "\tsteps\t" + std::to_string(steps) + "\tmistakes\t" +
            std::to_string(mistakes) + "\trestarts\t" + std::to_string(restarts) + "\tcompleted\t" +
            (session.completed ? "1" : "0") + "\n";
  }
  text += "total\tsessions\t" + std::to_string(args.sessions) + "\tmistakes\t" +
          std::to_string(total_mistakes) + "\trestarts\t" + std::to_string(total_restarts) + "\n";
  emit(args.out, text);
  return 0;
}

int run_selfcheck() {
  const oracles::SelfcheckReport report = oracles::run_selfcheck();
  for (const std::string& line : report.lines) std::cout << line << "\n";
  if (report.failures > 0) {
    std::cout << "selfcheck: " << report.failures << " mismatch(es)\n";
    return 1;
  }
  std::cout << "selfcheck: all oracles agree\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Face obfuscation and dataset evaluation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a config file (flags win)");

  ObfuscateArgs blur_args;
  CLI::App* blur = app.add_subcommand("blur", "Blur annotated faces across a dataset");
  blur->add_option("--annotations", blur_args.annotations, "Annotation JSONL file")->required();
  blur->add_option("--images", blur_args.images, "Input image root")->required();
  blur->add_option("--out", blur_args.out, "Output image root")->required();
  blur->add_option("--jobs", blur_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  blur->add_flag("--png", blur_args.png, "Write lossless PNG output");
  blur->add_option("--quality", blur_args.quality, "JPEG quality")->check(CLI::Range(1, 100));
  blur->add_option("--sigma-from", blur_args.sigma_from,
                   "Diagonals feeding the blur strength: original|enlarged");

  ObfuscateArgs overlay_args;
  CLI::App* overlay = app.add_subcommand("overlay", "Paint annotated faces with a solid color");
  overlay->add_option("--annotations", overlay_args.annotations, "Annotation JSONL file")->required();
  overlay->add_option("--images", overlay_args.images, "Input image root")->required();
  overlay->add_option("--out", overlay_args.out, "Output image root")->required();
  overlay->add_option("--jobs", overlay_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  overlay->add_flag("--png", overlay_args.png, "Write lossless PNG output");
  overlay->add_option("--quality", overlay_args.quality, "JPEG quality")->check(CLI::Range(1, 100));
  overlay->add_option("--color", overlay_args.color, "mean|red|green|blue or r,g,b");
  overlay->add_flag("--enlarge", overlay_args.enlarge, "Pad boxes before painting");

  CLI::App* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->require_subcommand(1);
  StatsArgs stats_faces_args;
  CLI::App* stats_faces = stats->add_subcommand("faces", "Face prevalence and histograms");
  stats_faces->add_option("--annotations", stats_faces_args.annotations, "Annotation JSONL file")
      ->required();
  stats_faces->add_option("--hierarchy", stats_faces_args.hierarchy,
                          "category<TAB>supercategory file");
  stats_faces->add_option("--out", stats_faces_args.out, "Report path (default stdout)");
  stats_faces->add_option("--plot", stats_faces_args.plot, "Plot-data path (name<TAB>fraction)");
  stats_faces->add_flag("--precise", stats_faces_args.precise, "Full-precision numbers");

  StatsArgs stats_overlap_args;
  CLI::App* stats_overlap =
      stats->add_subcommand("overlap", "Mean fraction of object area covered by faces");
  stats_overlap->add_option("--annotations", stats_overlap_args.annotations,
                            "Annotation JSONL file")->required();
  stats_overlap->add_option("--out", stats_overlap_args.out, "Report path (default stdout)");
  stats_overlap->add_option("--plot", stats_overlap_args.plot, "Plot-data path");
  stats_overlap->add_flag("--precise", stats_overlap_args.precise, "Full-precision numbers");

  CLI::App* eval = app.add_subcommand("eval", "Classifier-output evaluation");
  eval->require_subcommand(1);
  EvalAccuracyArgs eval_accuracy_args;
  CLI::App* eval_accuracy = eval->add_subcommand("accuracy", "Top-k accuracy report");
  eval_accuracy->add_option("--predictions", eval_accuracy_args.predictions,
                            "Prediction JSONL file")->required();
  eval_accuracy->add_option("--out", eval_accuracy_args.out, "Report path (default stdout)");
  eval_accuracy->add_flag("--ap", eval_accuracy_args.with_ap, "Include average precision");
  eval_accuracy->add_flag("--precise", eval_accuracy_args.precise, "Full-precision numbers");

  EvalDeltaArgs eval_delta_args;
  CLI::App* eval_delta = eval->add_subcommand("delta", "Baseline minus treatment differences");
  eval_delta->add_option("--baseline", eval_delta_args.baseline, "Baseline prediction JSONL")
      ->required();
  eval_delta->add_option("--treatment", eval_delta_args.treatment, "Treatment prediction JSONL")
      ->required();
  eval_delta->add_option("--out", eval_delta_args.out, "Report path (default stdout)");
  eval_delta->add_flag("--ap", eval_delta_args.with_ap, "Include average precision deltas");
  eval_delta->add_flag("--precise", eval_delta_args.precise, "Full-precision numbers");

  EvalCorrelateArgs eval_correlate_args;
  CLI::App* eval_correlate = eval->add_subcommand("correlate", "Pearson correlation with p-value");
  eval_correlate->add_option("--x", eval_correlate_args.x_path, "key<TAB>value file")->required();
  eval_correlate->add_option("--y", eval_correlate_args.y_path, "key<TAB>value file")->required();
  eval_correlate->add_option("--out", eval_correlate_args.out, "Report path (default stdout)");
  eval_correlate->add_flag("--precise", eval_correlate_args.precise, "Full-precision numbers");

  EvalBinsArgs eval_bins_args;
  CLI::App* eval_bins = eval->add_subcommand("bins", "Mean drop per blurred-fraction bin");
  eval_bins->add_option("--fractions", eval_bins_args.fractions,
                        "key<TAB>fraction file (fractions in [0,1])")->required();
  eval_bins->add_option("--drops", eval_bins_args.drops, "key<TAB>drop file")->required();
  eval_bins->add_option("--edges", eval_bins_args.edges, "Bin edges in percent")
      ->delimiter(',');
  eval_bins->add_option("--out", eval_bins_args.out, "Report path (default stdout)");
  eval_bins->add_flag("--precise", eval_bins_args.precise, "Full-precision numbers");

  CLI::App* qc = app.add_subcommand("qc", "Annotation quality control");
  qc->require_subcommand(1);
  QcAuditArgs qc_audit_args;
  CLI::App* qc_audit = qc->add_subcommand("audit", "False positives and negatives vs ground truth");
  qc_audit->add_option("--annotations", qc_audit_args.annotations, "Annotation JSONL file")
      ->required();
  qc_audit->add_option("--truth", qc_audit_args.truth, "Ground-truth JSONL file")->required();
  qc_audit->add_option("--iou", qc_audit_args.iou_threshold, "Matching IoU threshold")
      ->check(CLI::Range(1e-9, 1.0));
  qc_audit->add_option("--out", qc_audit_args.out, "Report path (default stdout)");
  qc_audit->add_flag("--precise", qc_audit_args.precise, "Full-precision numbers");

  QcMergeArgs qc_merge_args;
  CLI::App* qc_merge = qc->add_subcommand("merge", "Fold worker submissions into detector boxes");
  qc_merge->add_option("--detector", qc_merge_args.detector, "Detector annotation JSONL")
      ->required();
  qc_merge->add_option("--log", qc_merge_args.log, "Worker-submission JSONL log")->required();
  qc_merge->add_option("--out", qc_merge_args.out, "Merged annotation JSONL path")->required();

  QcSimulateArgs qc_simulate_args;
  CLI::App* qc_simulate = qc->add_subcommand("simulate", "Run simulated annotation sessions");
  qc_simulate->add_option("--annotations", qc_simulate_args.annotations,
                          "Ground-truth JSONL (first 50 images form the task)")->required();
  qc_simulate->add_option("--sessions", qc_simulate_args.sessions, "Sessions to simulate");
  qc_simulate->add_option("--seed", qc_simulate_args.seed, "Simulation seed");
  qc_simulate->add_option("--error-rate", qc_simulate_args.error_rate,
                          "Chance a submission is corrupted");
  qc_simulate->add_option("--iou", qc_simulate_args.iou_threshold, "Gold-check IoU threshold")
      ->check(CLI::Range(1e-9, 1.0));
  qc_simulate->add_option("--out", qc_simulate_args.out, "Report path (default stdout)");

  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the embedded oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*blur) return run_obfuscate(blur_args, ObfuscationMode::blur);
    if (*overlay) return run_obfuscate(overlay_args, ObfuscationMode::overlay);
    if (*stats_faces) return run_stats_faces(stats_faces_args);
    if (*stats_overlap) return run_stats_overlap(stats_overlap_args);
    if (*eval_accuracy) return run_eval_accuracy(eval_accuracy_args);
    if (*eval_delta) return run_eval_delta(eval_delta_args);
    if (*eval_correlate) return run_eval_correlate(eval_correlate_args);
    if (*eval_bins) return run_eval_bins(eval_bins_args);
    if (*qc_audit) return run_qc_audit(qc_audit_args);
    if (*qc_merge) return run_qc_merge(qc_merge_args);
    if (*qc_simulate) return run_qc_simulate(qc_simulate_args);
    if (*selfcheck) return run_selfcheck();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
