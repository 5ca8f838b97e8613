#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "screenforge/eval/evalkit.hpp"
#include "screenforge/util/rng.hpp"
#include "support/oracles.hpp"

// Random detection/ground-truth instances paired with their oracle form.
namespace testing {

using screenforge::BBox;
using screenforge::Rng;
using screenforge::eval::Detection;
using screenforge::eval::GroundTruth;


inline const char* kClasses[] = {"name", "address", "contact"};

struct Instance {
  std::vector<Detection> dets;
  std::vector<GroundTruth> gts;
  std::vector<oracle::Det> odets;
  std::vector<oracle::Gt> ogts;
};

inline Instance random_instance(Rng& rng) {
  Instance in;
  const int samples = static_cast<int>(rng.between(1, 3));
  const int n_gt = static_cast<int>(rng.between(0, 12));
  for (int i = 0; i < n_gt; ++i) {
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(samples)));
    const int c = static_cast<int>(rng.below(3));
    const BBox b{static_cast<int>(rng.between(0, 40)), static_cast<int>(rng.between(0, 40)), static_cast<int>(rng.between(2, 20)),
                 static_cast<int>(rng.between(2, 20))};
    in.gts.push_back({"s" + std::to_string(s), b, kClasses[c]});
    in.ogts.push_back({s, c, {b.x, b.y, b.w, b.h}});
  }
  const int n_det = static_cast<int>(rng.between(0, 16));
  for (int i = 0; i < n_det; ++i) {
    int s, c;
    BBox b;
    if (!in.gts.empty() && rng.bernoulli(0.6)) {
      // Jitter a ground truth so matches are common.
      const auto& g = in.ogts[rng.below(in.ogts.size())];
      s = g.sample;
      c = rng.bernoulli(0.85) ? g.cls : static_cast<int>(rng.below(3));
      b = {g.box.x + static_cast<int>(rng.between(-3, 3)), g.box.y + static_cast<int>(rng.between(-3, 3)),
           std::max(1, g.box.w + static_cast<int>(rng.between(-4, 4))), std::max(1, g.box.h + static_cast<int>(rng.between(-4, 4)))};
    } else {
      s = static_cast<int>(rng.below(static_cast<std::uint64_t>(samples)));
      c = static_cast<int>(rng.below(3));
      b = {static_cast<int>(rng.between(0, 40)), static_cast<int>(rng.between(0, 40)), static_cast<int>(rng.between(2, 20)),
           static_cast<int>(rng.between(2, 20))};
    }
    const double conf = rng.unit();
    in.dets.push_back({"s" + std::to_string(s), b, kClasses[c], conf});
    in.odets.push_back({s, c, {b.x, b.y, b.w, b.h}, conf});
  }
  return in;
}

inline double oracle_map(const Instance& in) {
  double sum = 0;
  int classes = 0;
  for (int c = 0; c < 3; ++c) {
    const auto n_gt = static_cast<std::size_t>(std::count_if(in.ogts.begin(), in.ogts.end(), [&](const oracle::Gt& g) { return g.cls == c; }));
    if (n_gt == 0) continue;
    ++classes;
    sum += oracle::ap_101(oracle::ranked_hits(in.odets, in.ogts, c), n_gt);
  }
  return classes ? sum / classes : 0.0;
}


}  // namespace testing
