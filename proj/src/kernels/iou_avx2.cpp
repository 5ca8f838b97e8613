#include <immintrin.h>

#include <algorithm>

#include "screenforge/kernels/iou.hpp"

namespace screenforge::kernels {

void iou_one_to_many_avx2(const BBox& a, const BoxSoA& boxes, std::span<double> out) {
  const double ax0s = a.x, ay0s = a.y;
  const double ax1s = ax0s + a.w, ay1s = ay0s + a.h;
  const double area_as = (ax1s - ax0s) * (ay1s - ay0s);
  const __m256d ax0 = _mm256_set1_pd(ax0s), ay0 = _mm256_set1_pd(ay0s);
  const __m256d ax1 = _mm256_set1_pd(ax1s), ay1 = _mm256_set1_pd(ay1s);
  const __m256d area_a = _mm256_set1_pd(area_as);
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t n = boxes.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d bx0 = _mm256_loadu_pd(&boxes.x0[i]);
    const __m256d by0 = _mm256_loadu_pd(&boxes.y0[i]);
    const __m256d bx1 = _mm256_loadu_pd(&boxes.x1[i]);
    const __m256d by1 = _mm256_loadu_pd(&boxes.y1[i]);
    // max/min argument order mirrors std::max(0.0, v) / std::min(a, b) in the
    // scalar kernel; the values are never NaN so ordering is immaterial anyway.
    const __m256d iw = _mm256_max_pd(zero, _mm256_sub_pd(_mm256_min_pd(ax1, bx1), _mm256_max_pd(ax0, bx0)));
    const __m256d ih = _mm256_max_pd(zero, _mm256_sub_pd(_mm256_min_pd(ay1, by1), _mm256_max_pd(ay0, by0)));
    const __m256d inter = _mm256_mul_pd(iw, ih);
    const __m256d area_b = _mm256_mul_pd(_mm256_sub_pd(bx1, bx0), _mm256_sub_pd(by1, by0));
    const __m256d uni = _mm256_sub_pd(_mm256_add_pd(area_a, area_b), inter);
    const __m256d ratio = _mm256_div_pd(inter, uni);
    const __m256d positive = _mm256_cmp_pd(uni, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(&out[i], _mm256_and_pd(positive, ratio));
  }
  for (; i < n; ++i) {
    const double iw = std::max(0.0, std::min(ax1s, boxes.x1[i]) - std::max(ax0s, boxes.x0[i]));
    const double ih = std::max(0.0, std::min(ay1s, boxes.y1[i]) - std::max(ay0s, boxes.y0[i]));
    const double inter = iw * ih;
    const double area_b = (boxes.x1[i] - boxes.x0[i]) * (boxes.y1[i] - boxes.y0[i]);
    const double uni = area_as + area_b - inter;
    out[i] = uni > 0.0 ? inter / uni : 0.0;
  }
}

}  // namespace screenforge::kernels
