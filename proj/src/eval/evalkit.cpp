#include "screenforge/eval/evalkit.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "screenforge/error.hpp"
#include "screenforge/kernels/iou.hpp"
#include "screenforge/util/text.hpp"

extern char** environ;

namespace screenforge::eval {

using nlohmann::json;

double iou(const BBox& a, const BBox& b) {
  kernels::BoxSoA one;
  one.push_back(b);
  double out = 0.0;
  kernels::iou_one_to_many_scalar(a, one, std::span<double>(&out, 1));
  return out;
}

std::size_t MatchResult::tp() const {
  return static_cast<std::size_t>(std::count_if(det_to_gt.begin(), det_to_gt.end(), [](int g) { return g >= 0; }));
}

std::size_t MatchResult::fn() const {
  return static_cast<std::size_t>(std::count(gt_to_det.begin(), gt_to_det.end(), -1));
}

MatchResult match(std::span<const Detection> dets, std::span<const GroundTruth> gts, double iou_thr) {
  MatchResult m;
  m.det_to_gt.assign(dets.size(), -1);
  m.det_iou.assign(dets.size(), 0.0);
  m.gt_to_det.assign(gts.size(), -1);
  m.order.resize(dets.size());
  std::iota(m.order.begin(), m.order.end(), std::size_t{0});
  std::stable_sort(m.order.begin(), m.order.end(), [&](std::size_t a, std::size_t b) {
    const Detection& da = dets[a];
    const Detection& db = dets[b];
    if (da.confidence != db.confidence) return da.confidence > db.confidence;
    return std::tie(da.sample_id, da.cls, da.box.y, da.box.x, da.box.h, da.box.w) <
           std::tie(db.sample_id, db.cls, db.box.y, db.box.x, db.box.h, db.box.w);
  });

  struct Group {
    std::vector<int> indices;  // ascending ground-truth index
    kernels::BoxSoA boxes;
  };
  std::map<std::pair<std::string, std::string>, Group> groups;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    Group& grp = groups[{gts[g].sample_id, gts[g].cls}];
    grp.indices.push_back(static_cast<int>(g));
    grp.boxes.push_back(gts[g].box);
  }
  std::vector<double> ious;
  for (std::size_t d : m.order) {
    auto it = groups.find({dets[d].sample_id, dets[d].cls});
    if (it == groups.end()) continue;
    const Group& grp = it->second;
    ious.resize(grp.boxes.size());
    kernels::iou_one_to_many(dets[d].box, grp.boxes, ious);
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t j = 0; j < grp.indices.size(); ++j) {
      const int g = grp.indices[j];
      if (m.gt_to_det[static_cast<std::size_t>(g)] >= 0 || ious[j] < iou_thr) continue;
      if (best < 0 || ious[j] > best_iou) {
        best = g;
        best_iou = ious[j];
      }
    }
    if (best >= 0) {
      m.det_to_gt[d] = best;
      m.det_iou[d] = best_iou;
      m.gt_to_det[static_cast<std::size_t>(best)] = static_cast<int>(d);
    }
  }
  return m;
}

double average_precision(const std::vector<bool>& ranked_tp, std::size_t n_gt) {
  if (n_gt == 0 || ranked_tp.empty()) return 0.0;
  const std::size_t n = ranked_tp.size();
  std::vector<std::size_t> tp_cum(n);
  std::vector<double> precision(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranked_tp[i]) ++tp;
    tp_cum[i] = tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  // Envelope: best precision at this rank or any later one.
  for (std::size_t i = n - 1; i > 0; --i) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double sum = 0.0;
  std::size_t i = 0;
  for (std::size_t j = 0; j <= 100; ++j) {
    // First rank whose recall tp/n_gt reaches j/100, compared exactly.
    while (i < n && 100 * tp_cum[i] < j * n_gt) ++i;
    if (i == n) break;
    sum += precision[i];
  }
  return sum / 101.0;
}

double average_precision(const MatchResult& m, std::span<const Detection> dets, std::span<const GroundTruth> gts,
                         std::string_view cls) {
  std::vector<bool> ranked;
  for (std::size_t d : m.order)
    if (dets[d].cls == cls) ranked.push_back(m.det_to_gt[d] >= 0);
  const auto n_gt = static_cast<std::size_t>(
      std::count_if(gts.begin(), gts.end(), [&](const GroundTruth& g) { return g.cls == cls; }));
  return average_precision(ranked, n_gt);
}

GroundTruthSet GroundTruthSet::from_samples(std::span<const AnnotatedSample> samples, const dataset::ClassMap& classes) {
  GroundTruthSet set;
  for (const auto& s : samples) {
    const std::string id = s.id.str();
    set.sample_ids.push_back(id);
    set.group_of[id] = std::string(s.id.fill.group());
    for (const auto& a : s.annotations) set.boxes.push_back({id, a.box, classes.map(a.cls.fine_label)});
  }
  return set;
}

namespace {

Scores score(std::span<const Detection> dets, std::span<const GroundTruth> gts, const EvalOptions& options) {
  Scores s;
  const MatchResult m = match(dets, gts, options.iou_threshold);
  std::set<std::string> classes;
  for (const auto& g : gts) classes.insert(g.cls);
  double sum = 0.0;
  for (const auto& cls : classes) {
    const double ap = average_precision(m, dets, gts, cls);
    s.per_class_ap[cls] = ap;
    sum += ap;
  }
  s.map50 = classes.empty() ? 0.0 : sum / static_cast<double>(classes.size());
  std::vector<bool> gt_hit(gts.size(), false);
  for (std::size_t d = 0; d < dets.size(); ++d) {
    if (dets[d].confidence < options.conf_threshold) continue;
    if (m.det_to_gt[d] >= 0) {
      ++s.tp;
      gt_hit[static_cast<std::size_t>(m.det_to_gt[d])] = true;
    } else {
      ++s.fp;
    }
  }
  s.fn = static_cast<std::size_t>(std::count(gt_hit.begin(), gt_hit.end(), false));
  s.precision = s.tp + s.fp == 0 ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
  s.recall = gts.empty() ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(gts.size());
  return s;
}

}  // namespace

EvalReport evaluate(std::span<const Detection> dets, const GroundTruthSet& gts, const dataset::ClassMap& classes,
                    const EvalOptions& options) {
  const std::set<std::string> known(gts.sample_ids.begin(), gts.sample_ids.end());
  std::vector<Detection> normalized;
  normalized.reserve(dets.size());
  for (const auto& d : dets) {
    if (!known.count(d.sample_id)) throw Error(Errc::unknown_sample_id, "detection for unknown sample '" + d.sample_id + "'");
    auto cls = classes.normalize(d.cls);
    if (!cls) {
      throw Error(Errc::invalid_argument,
                  "detection class '" + d.cls + "' is not in the " + std::string(classes.name()) + " class map");
    }
    Detection n = d;
    n.cls = *cls;
    normalized.push_back(std::move(n));
  }
  EvalReport r;
  r.conf_threshold = options.conf_threshold;
  r.iou_threshold = options.iou_threshold;
  r.class_mode = std::string(classes.name());
  r.samples = gts.sample_ids.size();
  r.detections = normalized.size();
  r.ground_truths = gts.boxes.size();
  r.overall = score(normalized, gts.boxes, options);

  std::set<std::string> groups;
  for (const auto& [id, g] : gts.group_of) groups.insert(g);
  for (const auto& group : groups) {
    std::vector<Detection> gd;
    std::vector<GroundTruth> gg;
    for (const auto& d : normalized)
      if (gts.group_of.at(d.sample_id) == group) gd.push_back(d);
    for (const auto& g : gts.boxes)
      if (gts.group_of.at(g.sample_id) == group) gg.push_back(g);
    r.per_fill_state[group] = score(gd, gg, options);
  }
  return r;
}

namespace {

json scores_json(const Scores& s) {
  return json{{"map50", s.map50}, {"precision", s.precision}, {"recall", s.recall},
              {"tp", s.tp},       {"fp", s.fp},               {"fn", s.fn},
              {"per_class_ap50", s.per_class_ap}};
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

json report_to_json(const EvalReport& r) {
  json groups = json::object();
  for (const auto& [g, s] : r.per_fill_state) groups[g] = scores_json(s);
  return json{{"overall", scores_json(r.overall)},
              {"per_fill_state", groups},
              {"conf_threshold", r.conf_threshold},
              {"iou_threshold", r.iou_threshold},
              {"class_mode", r.class_mode},
              {"samples", r.samples},
              {"detections", r.detections},
              {"ground_truths", r.ground_truths}};
}

std::string report_table(const EvalReport& r) {
  std::ostringstream os;
  os << "samples " << r.samples << ", ground truths " << r.ground_truths << ", detections " << r.detections
     << " (iou " << fixed(r.iou_threshold, 2) << ", conf " << fixed(r.conf_threshold, 2) << ")\n";
  os << std::left << std::setw(16) << "group" << std::right << std::setw(9) << "mAP@50" << std::setw(11)
     << "precision" << std::setw(9) << "recall" << std::setw(7) << "TP" << std::setw(7) << "FP" << std::setw(7) << "FN"
     << "\n";
  auto row = [&](const std::string& name, const Scores& s) {
    os << std::left << std::setw(16) << name << std::right << std::setw(9) << fixed(s.map50) << std::setw(11)
       << fixed(s.precision) << std::setw(9) << fixed(s.recall) << std::setw(7) << s.tp << std::setw(7) << s.fp
       << std::setw(7) << s.fn << "\n";
  };
  row("all", r.overall);
  for (const auto& [g, s] : r.per_fill_state) row(g, s);
  os << "\nper-class AP@50\n";
  for (const auto& [cls, ap] : r.overall.per_class_ap) os << "  " << std::left << std::setw(16) << cls << fixed(ap) << "\n";
  return os.str();
}

std::vector<Detection> parse_detections(std::string_view text) {
  std::vector<Detection> out;
  int line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      Detection d;
      d.sample_id = j.at("sample_id").get<std::string>();
      d.cls = j.at("class").get<std::string>();
      d.box = {j.at("x").get<int>(), j.at("y").get<int>(), j.at("w").get<int>(), j.at("h").get<int>()};
      d.confidence = j.at("confidence").get<double>();
      if (!std::isfinite(d.confidence) || d.confidence < 0.0 || d.confidence > 1.0) {
        throw ParseError("confidence outside [0, 1]", line_no, 1);
      }
      if (d.box.w <= 0 || d.box.h <= 0 || d.box.x < 0 || d.box.y < 0) throw ParseError("invalid box", line_no, 1);
      out.push_back(std::move(d));
    } catch (const json::exception& e) {
      throw ParseError(std::string("detection record: ") + e.what(), line_no, 1);
    }
  }
  return out;
}

std::string detections_to_ndjson(std::span<const Detection> dets) {
  std::string out;
  for (const auto& d : dets) {
    json j{{"sample_id", d.sample_id}, {"class", d.cls},   {"x", d.box.x},
           {"y", d.box.y},             {"w", d.box.w},     {"h", d.box.h},
           {"confidence", d.confidence}};
    out += j.dump() + "\n";
  }
  return out;
}

LatencyStats summarize_timings(std::vector<double> kept) {
  LatencyStats s;
  s.timings_ms = kept;
  s.samples = kept.size();
  if (kept.empty()) return s;
  std::sort(kept.begin(), kept.end());
  const std::size_t n = kept.size();
  s.median_ms = n % 2 ? kept[n / 2] : (kept[n / 2 - 1] + kept[n / 2]) / 2.0;
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95_ms = kept[std::max<std::size_t>(rank, 1) - 1];
  s.mean_ms = std::accumulate(kept.begin(), kept.end(), 0.0) / static_cast<double>(n);
  s.min_ms = kept.front();
  s.max_ms = kept.back();
  return s;
}

LatencyStats bench_latency(const std::string& runner, std::span<const std::filesystem::path> images, int warmup,
                           int reps) {
  if (images.empty()) throw Error(Errc::invalid_argument, "bench needs at least one image");
  if (warmup < 0 || reps < 1) throw Error(Errc::invalid_argument, "bench needs warmup >= 0 and reps >= 1");
  const std::string script = runner + " \"$1\"";
  std::vector<double> kept;
  for (int r = 0; r < warmup + reps; ++r) {
    const std::string image = images[static_cast<std::size_t>(r) % images.size()].string();
    std::vector<std::string> args = {"/bin/sh", "-c", script, "sh", image};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", O_WRONLY, 0);
    const auto t0 = std::chrono::steady_clock::now();
    pid_t pid = -1;
    const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) throw Error(Errc::runner_failed, "cannot start runner");
    int status = 0;
    waitpid(pid, &status, 0);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw Error(Errc::runner_failed, "runner exited with status " +
                                           std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + " on " + image);
    }
    if (r >= warmup) kept.push_back(ms);
  }
  return summarize_timings(std::move(kept));
}

}  // namespace screenforge::eval
