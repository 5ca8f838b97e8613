#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"
#include "screenforge/dataset/classmap.hpp"

namespace screenforge::eval {

struct Detection {
  std::string sample_id;
  BBox box;
  std::string cls;
  double confidence = 0.0;

  bool operator==(const Detection&) const = default;
};

struct GroundTruth {
  std::string sample_id;
  BBox box;
  std::string cls;
};

double iou(const BBox& a, const BBox& b);

struct MatchResult {
  std::vector<int> det_to_gt;       // -1 when unmatched
  std::vector<double> det_iou;      // IoU with the matched ground truth
  std::vector<int> gt_to_det;       // -1 when missed
  std::vector<std::size_t> order;   // detection indices in processing order

  std::size_t tp() const;
  std::size_t fp() const { return det_to_gt.size() - tp(); }
  std::size_t fn() const;
};

// Processing order: confidence descending, then sample, class and box
// (y, x, h, w) ascending, then input position. Each detection claims the
// unclaimed same-sample, same-class ground truth with the highest IoU >= thr;
// equal IoUs go to the lowest ground-truth index.
MatchResult match(std::span<const Detection> dets, std::span<const GroundTruth> gts, double iou_thr = 0.5);

// 101-point interpolated AP from per-detection outcomes already in ranking
// order. Zero when there are no ground truths or no detections.
double average_precision(const std::vector<bool>& ranked_tp, std::size_t n_gt);

// AP for one class from a dataset-wide match.
double average_precision(const MatchResult& m, std::span<const Detection> dets, std::span<const GroundTruth> gts,
                         std::string_view cls);

struct Scores {
  double map50 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
  std::map<std::string, double> per_class_ap;  // classes present in ground truth
};

struct EvalReport {
  Scores overall;
  std::map<std::string, Scores> per_fill_state;  // "empty" | "partial" | "full"
  double conf_threshold = 0.25;
  double iou_threshold = 0.5;
  std::string class_mode;
  std::size_t samples = 0;
  std::size_t detections = 0;
  std::size_t ground_truths = 0;
};

// Ground truth for a set of samples; samples with no boxes still count.
struct GroundTruthSet {
  std::vector<std::string> sample_ids;
  std::map<std::string, std::string> group_of;  // sample id -> fill group
  std::vector<GroundTruth> boxes;

  static GroundTruthSet from_samples(std::span<const AnnotatedSample> samples, const dataset::ClassMap& classes);
};

struct EvalOptions {
  double iou_threshold = 0.5;
  double conf_threshold = 0.25;
};

// mAP@50 is the unweighted mean of per-class AP over classes present in the
// ground truth. Throws UnknownSampleId for detections on unknown samples and
// InvalidArgument for classes outside the class map.
EvalReport evaluate(std::span<const Detection> dets, const GroundTruthSet& gts, const dataset::ClassMap& classes,
                    const EvalOptions& options = {});

nlohmann::json report_to_json(const EvalReport& report);
std::string report_table(const EvalReport& report);

// Newline-delimited {sample_id, class, x, y, w, h, confidence}. Throws
// ParseError with the line number.
std::vector<Detection> parse_detections(std::string_view text);
std::string detections_to_ndjson(std::span<const Detection> dets);

struct LatencyStats {
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double mean_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  std::size_t samples = 0;
  std::vector<double> timings_ms;  // kept timings, run order
};

// Runs `/bin/sh -c '<runner> "$1"' sh <image>` warmup + reps times, cycling
// through the images; the first `warmup` timings are discarded. Throws
// RunnerFailed on a non-zero exit.
LatencyStats bench_latency(const std::string& runner, std::span<const std::filesystem::path> images, int warmup,
                           int reps);

// Median and nearest-rank p95 of a list of timings.
LatencyStats summarize_timings(std::vector<double> kept);

}  // namespace screenforge::eval
