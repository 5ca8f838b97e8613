#include <doctest.h>

#include <bit>
#include <cstdlib>

#include "screenforge/eval/evalkit.hpp"
#include "screenforge/kernels/iou.hpp"
#include "screenforge/util/rng.hpp"

using namespace screenforge;
using namespace screenforge::kernels;

namespace {

BBox random_box(Rng& rng, int extent) {
  return {static_cast<int>(rng.between(-extent, extent)), static_cast<int>(rng.between(-extent, extent)),
          static_cast<int>(rng.between(0, extent)), static_cast<int>(rng.between(0, extent))};
}

}  // namespace

TEST_CASE("scalar kernel equals the reference iou") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const BBox a = random_box(rng, 100);
    BoxSoA soa;
    std::vector<BBox> boxes;
    const auto n = static_cast<std::size_t>(rng.between(0, 37));
    for (std::size_t i = 0; i < n; ++i) {
      boxes.push_back(random_box(rng, 100));
      soa.push_back(boxes.back());
    }
    std::vector<double> out(n);
    iou_one_to_many_scalar(a, soa, out);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == eval::iou(a, boxes[i]));
  }
}

TEST_CASE("every available variant agrees bit for bit") {
  Rng rng(2);
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_available(isa)) {
      MESSAGE("skipping unavailable ISA " << to_string(isa));
      continue;
    }
    for (int trial = 0; trial < 500; ++trial) {
      // Sizes around the vector width, including tails, and large coordinates.
      const int extent = trial % 2 ? 50 : 1 << 20;
      const BBox a = random_box(rng, extent);
      BoxSoA soa;
      const auto n = static_cast<std::size_t>(trial % 19);
      for (std::size_t i = 0; i < n; ++i) soa.push_back(i % 5 == 0 ? a : random_box(rng, extent));
      std::vector<double> ref(n), got(n);
      iou_one_to_many(Isa::scalar, a, soa, ref);
      iou_one_to_many(isa, a, soa, got);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::bit_cast<std::uint64_t>(ref[i]) == std::bit_cast<std::uint64_t>(got[i]));
    }
  }
}

TEST_CASE("dispatch honours SCREENFORGE_SIMD") {
  const Isa active = active_isa();
  CHECK(isa_available(active));
  if (const char* e = std::getenv("SCREENFORGE_SIMD"); e && std::string(e) == "scalar") CHECK(active == Isa::scalar);
  CHECK(to_string(Isa::avx2) == "avx2");
}
