#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "screenforge/core/model.hpp"

namespace screenforge::kernels {

// Candidate boxes in structure-of-arrays form, coordinates as doubles (exact
// for any integer pixel value).
struct BoxSoA {
  std::vector<double> x0, y0, x1, y1;

  void push_back(const BBox& b);
  std::size_t size() const { return x0.size(); }
  void clear();
};

// out[i] = IoU(a, boxes[i]). Every variant performs the same IEEE operations
// in the same order, so results agree bit for bit.
void iou_one_to_many_scalar(const BBox& a, const BoxSoA& boxes, std::span<double> out);
#if defined(SCREENFORGE_HAVE_AVX2)
void iou_one_to_many_avx2(const BBox& a, const BoxSoA& boxes, std::span<double> out);
#endif

enum class Isa { scalar, avx2 };

// The variant chosen at startup: AVX2 when the CPU has it, unless
// SCREENFORGE_SIMD=scalar.
Isa active_isa();
std::string_view to_string(Isa isa);
bool isa_available(Isa isa);

void iou_one_to_many(const BBox& a, const BoxSoA& boxes, std::span<double> out);
void iou_one_to_many(Isa isa, const BBox& a, const BoxSoA& boxes, std::span<double> out);

}  // namespace screenforge::kernels
