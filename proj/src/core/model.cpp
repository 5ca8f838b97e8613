#include "screenforge/core/model.hpp"

#include <charconv>
#include <map>
#include <utility>

namespace screenforge {

Family family_of(FineLabel label) {
  switch (label) {
    case FineLabel::product_text:
    case FineLabel::product_image: return Family::product;
    case FineLabel::order_info: return Family::order;
    default: return Family::pii;
  }
}

ElementKind element_kind_of(FineLabel label) {
  switch (label) {
    case FineLabel::product_image: return ElementKind::image;
    case FineLabel::input_field: return ElementKind::input;
    default: return ElementKind::text;
  }
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::pii: return "pii";
    case Family::product: return "product";
    case Family::order: return "order";
  }
  return "?";
}

std::string_view to_string(FineLabel l) {
  switch (l) {
    case FineLabel::name: return "name";
    case FineLabel::address: return "address";
    case FineLabel::contact: return "contact";
    case FineLabel::payment: return "payment";
    case FineLabel::other_pii: return "other_pii";
    case FineLabel::product_text: return "product_text";
    case FineLabel::product_image: return "product_image";
    case FineLabel::order_info: return "order_info";
    case FineLabel::input_field: return "input_field";
  }
  return "?";
}

std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::text: return "text";
    case ElementKind::input: return "input";
    case ElementKind::image: return "image";
  }
  return "?";
}

std::string_view to_string(Visibility v) { return v == Visibility::full ? "full" : "clipped"; }

std::optional<Family> parse_family(std::string_view s) {
  for (Family f : {Family::pii, Family::product, Family::order})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

std::optional<FineLabel> parse_fine_label(std::string_view s) {
  for (FineLabel l : kAllFineLabels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::optional<ElementKind> parse_element_kind(std::string_view s) {
  for (ElementKind k : {ElementKind::text, ElementKind::input, ElementKind::image})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::optional<Visibility> parse_visibility(std::string_view s) {
  if (s == "full") return Visibility::full;
  if (s == "clipped") return Visibility::clipped;
  return std::nullopt;
}

AnnotationClass AnnotationClass::of(FineLabel label) {
  return AnnotationClass{family_of(label), label, element_kind_of(label)};
}

bool AnnotationClass::consistent() const {
  return kind == family_of(fine_label) && element_kind == element_kind_of(fine_label);
}

std::string FillTag::str() const {
  switch (kind) {
    case FillKind::empty: return "empty";
    case FillKind::full: return "full";
    case FillKind::partial: return "partial_" + std::to_string(k);
  }
  return "?";
}

std::string_view FillTag::group() const {
  switch (kind) {
    case FillKind::empty: return "empty";
    case FillKind::full: return "full";
    case FillKind::partial: return "partial";
  }
  return "?";
}

std::optional<FillTag> FillTag::parse(std::string_view s) {
  if (s == "empty") return FillTag::empty();
  if (s == "full") return FillTag::full();
  constexpr std::string_view prefix = "partial_";
  if (s.substr(0, prefix.size()) != prefix) return std::nullopt;
  s.remove_prefix(prefix.size());
  int k = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size() || k < 1) return std::nullopt;
  return FillTag::partial(k);
}

std::string SampleId::str() const {
  return layout_id + "__v" + std::to_string(variant_index) + "__" + fill.str();
}

std::optional<SampleId> SampleId::parse(std::string_view s) {
  const auto last = s.rfind("__");
  if (last == std::string_view::npos) return std::nullopt;
  const auto mid = s.rfind("__v", last - 1);
  if (mid == std::string_view::npos || mid >= last) return std::nullopt;
  SampleId id;
  id.layout_id = std::string(s.substr(0, mid));
  const std::string_view variant = s.substr(mid + 3, last - mid - 3);
  auto [ptr, ec] = std::from_chars(variant.data(), variant.data() + variant.size(), id.variant_index);
  if (ec != std::errc() || ptr != variant.data() + variant.size() || id.layout_id.empty()) return std::nullopt;
  auto fill = FillTag::parse(s.substr(last + 2));
  if (!fill) return std::nullopt;
  id.fill = *fill;
  return id;
}

std::vector<Violation> validate_sample(const AnnotatedSample& sample) {
  std::vector<Violation> out;
  const auto& dims = sample.image_dims;
  if (dims.width <= 0 || dims.height <= 0) {
    out.push_back({"image_dims_positive", std::nullopt,
                   std::to_string(dims.width) + "x" + std::to_string(dims.height)});
  }
  std::map<std::pair<std::string, int>, std::size_t> seen;
  for (std::size_t i = 0; i < sample.annotations.size(); ++i) {
    const Annotation& a = sample.annotations[i];
    const BBox& b = a.box;
    if (b.x < 0 || b.y < 0 || b.w <= 0 || b.h <= 0) {
      out.push_back({"bbox_nonnegative_nondegenerate", i,
                     "(" + std::to_string(b.x) + "," + std::to_string(b.y) + "," + std::to_string(b.w) + "," +
                         std::to_string(b.h) + ")"});
    }
    if (static_cast<std::int64_t>(b.x) + b.w > dims.width || static_cast<std::int64_t>(b.y) + b.h > dims.height) {
      out.push_back({"bbox_within_image", i,
                     "box right/bottom " + std::to_string(b.right()) + "/" + std::to_string(b.bottom()) +
                         " exceeds image " + std::to_string(dims.width) + "x" + std::to_string(dims.height)});
    }
    if (!a.cls.consistent()) {
      out.push_back({"class_consistency", i,
                     std::string(to_string(a.cls.fine_label)) + " tagged kind=" + std::string(to_string(a.cls.kind)) +
                         " element_kind=" + std::string(to_string(a.cls.element_kind))});
    }
    if (a.line_index < 0) out.push_back({"line_index_nonnegative", i, std::to_string(a.line_index)});
    if (a.line_index > 0 && a.cls.element_kind != ElementKind::text) {
      out.push_back({"line_index_text_only", i, "line_index " + std::to_string(a.line_index) + " on non-text"});
    }
    if (a.source_key.empty() && a.cls.element_kind != ElementKind::input) {
      out.push_back({"source_key_present", i, "non-input annotation without source key"});
    }
    // Input fields carry no source key; uniqueness is over keyed annotations.
    if (!a.source_key.empty()) {
      auto [it, inserted] = seen.emplace(std::make_pair(a.source_key, a.line_index), i);
      if (!inserted) {
        out.push_back({"unique_key_line", i,
                       "duplicates annotation " + std::to_string(it->second) + " (" + a.source_key + ", line " +
                           std::to_string(a.line_index) + ")"});
      }
    }
  }
  return out;
}

}  // namespace screenforge
