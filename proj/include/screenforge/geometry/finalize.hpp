#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"

namespace screenforge::geometry {

inline constexpr int kExtractorSchema = 1;

// Fractional page-pixel rectangle as the browser reports it.
struct RectF {
  double x = 0, y = 0, w = 0, h = 0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  bool operator==(const RectF&) const = default;
};

// Exact intersection; nullopt iff the overlap has zero area.
std::optional<BBox> clip_box(const BBox& box, const BBox& region);
std::optional<RectF> clip_rect(const RectF& rect, const RectF& region);

// Rounds each edge half away from zero, so adjacent rects stay adjacent.
BBox round_rect(const RectF& r);

// Turns an extractor payload into finalized annotations: occluded records
// dropped, clipped ones cut to their clip rect, everything cut to the image,
// rounded, zero-area results dropped, ordered by (y, x, source_key, line).
// Throws SchemaMismatch on a payload of another version or shape.
std::vector<Annotation> finalize(const nlohmann::json& payload, const ImageDims& image);

// A payload that finalizes back to `annotations`; used by tests and re-import.
nlohmann::json payload_from_annotations(const std::vector<Annotation>& annotations, const ImageDims& image);

}  // namespace screenforge::geometry
