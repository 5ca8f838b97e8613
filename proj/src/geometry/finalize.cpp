#include "screenforge/geometry/finalize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "screenforge/error.hpp"

namespace screenforge::geometry {

using nlohmann::json;

std::optional<BBox> clip_box(const BBox& box, const BBox& region) {
  const int x0 = std::max(box.x, region.x);
  const int y0 = std::max(box.y, region.y);
  const int x1 = std::min(box.right(), region.right());
  const int y1 = std::min(box.bottom(), region.bottom());
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  return BBox{x0, y0, x1 - x0, y1 - y0};
}

std::optional<RectF> clip_rect(const RectF& rect, const RectF& region) {
  const double x0 = std::max(rect.x, region.x);
  const double y0 = std::max(rect.y, region.y);
  const double x1 = std::min(rect.right(), region.right());
  const double y1 = std::min(rect.bottom(), region.bottom());
  if (!(x1 > x0) || !(y1 > y0)) return std::nullopt;
  return RectF{x0, y0, x1 - x0, y1 - y0};
}

BBox round_rect(const RectF& r) {
  // std::lround rounds halfway cases away from zero.
  const long x0 = std::lround(r.x);
  const long y0 = std::lround(r.y);
  const long x1 = std::lround(r.right());
  const long y1 = std::lround(r.bottom());
  return BBox{static_cast<int>(x0), static_cast<int>(y0), static_cast<int>(x1 - x0), static_cast<int>(y1 - y0)};
}

namespace {

RectF rect_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(Errc::schema_mismatch, "rect must be [x, y, w, h]");
  RectF r{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  if (!std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(r.w) || !std::isfinite(r.h)) {
    throw Error(Errc::schema_mismatch, "non-finite rect");
  }
  return r;
}

template <typename T>
T required(const json& rec, const char* key) {
  if (!rec.contains(key)) throw Error(Errc::schema_mismatch, std::string("record lacks '") + key + "'");
  return rec.at(key).get<T>();
}

}  // namespace

std::vector<Annotation> finalize(const json& payload, const ImageDims& image) {
  if (!payload.is_object() || !payload.contains("extractor") || !payload.at("extractor").is_number_integer() ||
      payload.at("extractor").get<int>() != kExtractorSchema) {
    throw Error(Errc::schema_mismatch, "payload is not an extractor v1 payload");
  }
  if (!payload.contains("records") || !payload.at("records").is_array()) {
    throw Error(Errc::schema_mismatch, "payload lacks a records array");
  }
  const RectF bounds{0, 0, static_cast<double>(image.width), static_cast<double>(image.height)};
  std::vector<Annotation> out;
  try {
    for (const auto& rec : payload.at("records")) {
      const auto label = parse_fine_label(required<std::string>(rec, "label"));
      const auto family = parse_family(required<std::string>(rec, "family"));
      const auto kind = parse_element_kind(required<std::string>(rec, "kind"));
      if (!label || !family || !kind) throw Error(Errc::schema_mismatch, "record has an unknown class field");
      const AnnotationClass cls = AnnotationClass::of(*label);
      if (cls.kind != *family || cls.element_kind != *kind) {
        throw Error(Errc::schema_mismatch, "record class " + std::string(to_string(*label)) + " disagrees with " +
                                               std::string(to_string(*family)) + "/" + std::string(to_string(*kind)));
      }
      const std::string vis = required<std::string>(rec, "visibility");
      if (vis == "occluded") continue;
      if (vis != "full" && vis != "clipped") throw Error(Errc::schema_mismatch, "unknown visibility '" + vis + "'");
      std::optional<RectF> clip;
      if (vis == "clipped") {
        if (!rec.contains("clip") || rec.at("clip").is_null()) {
          throw Error(Errc::schema_mismatch, "clipped record without a clip rect");
        }
        clip = rect_from(rec.at("clip"));
      }
      const std::string key = required<std::string>(rec, "key");
      const auto& rects = rec.at("rects");
      if (!rects.is_array()) throw Error(Errc::schema_mismatch, "rects must be an array");
      for (std::size_t i = 0; i < rects.size(); ++i) {
        const RectF raw = rect_from(rects[i]);
        std::optional<RectF> r = clip ? clip_rect(raw, *clip) : std::optional<RectF>(raw);
        if (r) r = clip_rect(*r, bounds);
        if (!r) continue;
        const BBox box = round_rect(*r);
        if (box.w <= 0 || box.h <= 0) continue;
        Annotation a;
        a.box = box;
        a.cls = cls;
        a.source_key = cls.element_kind == ElementKind::input ? "" : key;
        a.line_index = cls.element_kind == ElementKind::text ? static_cast<int>(i) : 0;
        a.visibility = (clip || box != round_rect(raw)) ? Visibility::clipped : Visibility::full;
        out.push_back(std::move(a));
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::schema_mismatch, std::string("payload: ") + e.what());
  }
  std::stable_sort(out.begin(), out.end(), [](const Annotation& a, const Annotation& b) {
    return std::tie(a.box.y, a.box.x, a.source_key, a.line_index) <
           std::tie(b.box.y, b.box.x, b.source_key, b.line_index);
  });
  return out;
}

json payload_from_annotations(const std::vector<Annotation>& annotations, const ImageDims& image) {
  json records = json::array();
  for (const auto& a : annotations) {
    json rects = json::array();
    // Pad earlier lines so the line index survives the round trip.
    for (int i = 0; i < a.line_index; ++i) rects.push_back(json::array({-10.0, -10.0, 1.0, 1.0}));
    rects.push_back(json::array({a.box.x, a.box.y, a.box.w, a.box.h}));
    json rec{{"key", a.source_key},
             {"family", to_string(a.cls.kind)},
             {"label", to_string(a.cls.fine_label)},
             {"kind", to_string(a.cls.element_kind)},
             {"field", ""},
             {"rects", rects},
             {"visibility", "full"},
             {"clip", nullptr}};
    records.push_back(std::move(rec));
  }
  return json{{"extractor", kExtractorSchema},
              {"doc", {{"width", image.width}, {"height", image.height}}},
              {"records", records}};
}

}  // namespace screenforge::geometry
