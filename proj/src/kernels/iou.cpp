#include "screenforge/kernels/iou.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "screenforge/error.hpp"

namespace screenforge::kernels {

void BoxSoA::push_back(const BBox& b) {
  x0.push_back(b.x);
  y0.push_back(b.y);
  x1.push_back(static_cast<double>(b.x) + b.w);
  y1.push_back(static_cast<double>(b.y) + b.h);
}

void BoxSoA::clear() {
  x0.clear();
  y0.clear();
  x1.clear();
  y1.clear();
}

void iou_one_to_many_scalar(const BBox& a, const BoxSoA& boxes, std::span<double> out) {
  const double ax0 = a.x, ay0 = a.y;
  const double ax1 = ax0 + a.w, ay1 = ay0 + a.h;
  const double area_a = (ax1 - ax0) * (ay1 - ay0);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const double iw = std::max(0.0, std::min(ax1, boxes.x1[i]) - std::max(ax0, boxes.x0[i]));
    const double ih = std::max(0.0, std::min(ay1, boxes.y1[i]) - std::max(ay0, boxes.y0[i]));
    const double inter = iw * ih;
    const double area_b = (boxes.x1[i] - boxes.x0[i]) * (boxes.y1[i] - boxes.y0[i]);
    const double uni = area_a + area_b - inter;
    out[i] = uni > 0.0 ? inter / uni : 0.0;
  }
}

namespace {

bool cpu_has_avx2() {
#if defined(SCREENFORGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa choose() {
  const char* env = std::getenv("SCREENFORGE_SIMD");
  if (env && std::string(env) == "scalar") return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = choose();
  return isa;
}

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

void iou_one_to_many(Isa isa, const BBox& a, const BoxSoA& boxes, std::span<double> out) {
  if (out.size() < boxes.size()) throw Error(Errc::invalid_argument, "IoU output span too small");
#if defined(SCREENFORGE_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!cpu_has_avx2()) throw Error(Errc::invalid_argument, "AVX2 requested on a CPU without it");
    iou_one_to_many_avx2(a, boxes, out);
    return;
  }
#else
  if (isa == Isa::avx2) throw Error(Errc::invalid_argument, "built without AVX2 kernels");
#endif
  iou_one_to_many_scalar(a, boxes, out);
}

void iou_one_to_many(const BBox& a, const BoxSoA& boxes, std::span<double> out) {
  iou_one_to_many(active_isa(), a, boxes, out);
}

}  // namespace screenforge::kernels
