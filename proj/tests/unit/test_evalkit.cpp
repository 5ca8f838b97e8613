#include <doctest.h>

#include <cmath>

#include "screenforge/dataset/classmap.hpp"
#include "screenforge/error.hpp"
#include "screenforge/eval/evalkit.hpp"
#include "screenforge/util/rng.hpp"
#include "support/metric_cases.hpp"
#include "support/oracles.hpp"

using namespace screenforge;
using namespace screenforge::eval;

using testing::Instance;

TEST_CASE("iou matches the pixel-count oracle") {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const BBox a{static_cast<int>(rng.between(0, 20)), static_cast<int>(rng.between(0, 20)), static_cast<int>(rng.between(1, 15)),
                 static_cast<int>(rng.between(1, 15))};
    const BBox b{static_cast<int>(rng.between(0, 20)), static_cast<int>(rng.between(0, 20)), static_cast<int>(rng.between(1, 15)),
                 static_cast<int>(rng.between(1, 15))};
    CHECK(iou(a, b) == doctest::Approx(oracle::iou({a.x, a.y, a.w, a.h}, {b.x, b.y, b.w, b.h}).value()).epsilon(1e-12));
  }
  CHECK(iou({0, 0, 10, 10}, {0, 0, 10, 10}) == 1.0);
  CHECK(iou({0, 0, 10, 10}, {10, 0, 10, 10}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {5, 0, 10, 10}) == doctest::Approx(50.0 / 150.0));
}

TEST_CASE("hand precision-recall case") {
  // Three ground truths; ranked hit, miss, hit.
  // Recall levels 0..33 reach precision 1, 34..66 reach 2/3, 67..100 nothing.
  CHECK(average_precision({true, false, true}, 3) == doctest::Approx((34.0 + 33.0 * 2.0 / 3.0) / 101.0).epsilon(1e-15));
  CHECK(average_precision({true, true}, 2) == 1.0);
  CHECK(average_precision({false, false}, 2) == 0.0);
  CHECK(average_precision({}, 2) == 0.0);
  CHECK(average_precision({true}, 0) == 0.0);
  // One of two found at rank 2: levels 0..50 reach 1/2.
  CHECK(average_precision({false, true}, 2) == doctest::Approx(51.0 * 0.5 / 101.0).epsilon(1e-15));
}

TEST_CASE("random instances agree with the brute-force oracle") {
  Rng rng(20240601);
  dataset::ClassMap fine(dataset::ClassMode::fine);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance in = testing::random_instance(rng);
    GroundTruthSet set;
    for (const char* s : {"s0", "s1", "s2"}) {
      set.sample_ids.push_back(s);
      set.group_of[s] = "full";
    }
    set.boxes = in.gts;
    EvalOptions o;
    o.conf_threshold = 0.0;
    const auto report = evaluate(in.dets, set, fine, o);
    INFO("trial " << trial);
    CHECK(std::fabs(report.overall.map50 - testing::oracle_map(in)) <= 1e-9);
  }
}

TEST_CASE("perfect detections score 1, no detections score 0") {
  dataset::ClassMap fine(dataset::ClassMode::fine);
  GroundTruthSet set;
  set.sample_ids = {"a", "b"};
  set.group_of = {{"a", "full"}, {"b", "empty"}};
  set.boxes = {{"a", {0, 0, 10, 10}, "name"}, {"a", {20, 0, 10, 10}, "address"}, {"b", {5, 5, 50, 5}, "name"}};
  std::vector<Detection> perfect;
  for (const auto& g : set.boxes) perfect.push_back({g.sample_id, g.box, g.cls, 0.9});
  const auto r = evaluate(perfect, set, fine);
  CHECK(r.overall.map50 == 1.0);
  CHECK(r.overall.precision == 1.0);
  CHECK(r.overall.recall == 1.0);
  CHECK(r.per_fill_state.at("empty").map50 == 1.0);
  const auto none = evaluate({}, set, fine);
  CHECK(none.overall.map50 == 0.0);
  CHECK(none.overall.fn == 3);
}

TEST_CASE("matching rules") {
  const std::vector<GroundTruth> gts = {{"a", {0, 0, 10, 10}, "name"}, {"a", {0, 0, 10, 10}, "name"}};
  // Two detections on two identical truths: both match, lowest index first.
  const std::vector<Detection> dets = {{"a", {0, 0, 10, 10}, "name", 0.5}, {"a", {0, 0, 10, 10}, "name", 0.9}};
  const auto m = match(dets, gts);
  CHECK(m.order == std::vector<std::size_t>{1, 0});
  CHECK(m.det_to_gt[1] == 0);
  CHECK(m.det_to_gt[0] == 1);
  CHECK(m.tp() == 2);
  // Exactly IoU 0.5 counts.
  const std::vector<GroundTruth> g2 = {{"a", {0, 0, 10, 10}, "name"}};
  const std::vector<Detection> half = {{"a", {0, 0, 10, 20}, "name", 1.0}};
  CHECK(match(half, g2).tp() == 1);
  const std::vector<Detection> under = {{"a", {0, 0, 10, 21}, "name", 1.0}};
  CHECK(match(under, g2).tp() == 0);
  // Class and sample must agree.
  const std::vector<Detection> wrong = {{"a", {0, 0, 10, 10}, "address", 1.0}, {"b", {0, 0, 10, 10}, "name", 1.0}};
  CHECK(match(wrong, g2).tp() == 0);
}

TEST_CASE("evaluate validates its input") {
  dataset::ClassMap fine(dataset::ClassMode::fine), coarse(dataset::ClassMode::coarse);
  GroundTruthSet set;
  set.sample_ids = {"a"};
  set.group_of = {{"a", "full"}};
  set.boxes = {{"a", {0, 0, 10, 10}, "text"}};
  try {
    evaluate(std::vector<Detection>{{"zzz", {0, 0, 1, 1}, "text", 1.0}}, set, coarse);
    FAIL("expected UnknownSampleId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_sample_id);
  }
  CHECK_THROWS_AS(evaluate(std::vector<Detection>{{"a", {0, 0, 1, 1}, "bogus", 1.0}}, set, coarse), Error);
  // A fine label is accepted under the coarse map.
  CHECK(evaluate(std::vector<Detection>{{"a", {0, 0, 10, 10}, "address", 1.0}}, set, coarse).overall.map50 == 1.0);
}

TEST_CASE("detections ndjson round trip and errors") {
  const std::vector<Detection> dets = {{"a", {1, 2, 3, 4}, "name", 0.25}, {"b", {5, 6, 7, 8}, "text", 1.0}};
  CHECK(parse_detections(detections_to_ndjson(dets)) == dets);
  try {
    parse_detections("{\"sample_id\":\"a\",\"class\":\"x\",\"x\":1,\"y\":1,\"w\":1,\"h\":1,\"confidence\":1}\n{oops}\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("latency summary") {
  const auto s = summarize_timings({5, 1, 3, 2, 4});
  CHECK(s.median_ms == 3.0);
  CHECK(s.min_ms == 1.0);
  CHECK(s.max_ms == 5.0);
  CHECK(s.mean_ms == 3.0);
  std::vector<double> hundred;
  for (int i = 1; i <= 100; ++i) hundred.push_back(i);
  CHECK(summarize_timings(hundred).p95_ms == 95.0);
  CHECK(summarize_timings({1, 2, 3, 4}).median_ms == 2.5);
}
