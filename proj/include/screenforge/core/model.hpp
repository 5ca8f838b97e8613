#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace screenforge {

// The three annotation attribute families (data-pii / data-product / data-order).
enum class Family { pii, product, order };

enum class FineLabel {
  name,
  address,
  contact,
  payment,
  other_pii,
  product_text,
  product_image,
  order_info,
  input_field,
};

enum class ElementKind { text, input, image };

inline constexpr std::array<FineLabel, 9> kAllFineLabels = {
    FineLabel::name,         FineLabel::address,       FineLabel::contact,
    FineLabel::payment,      FineLabel::other_pii,     FineLabel::product_text,
    FineLabel::product_image, FineLabel::order_info,   FineLabel::input_field,
};

Family family_of(FineLabel label);
ElementKind element_kind_of(FineLabel label);

std::string_view to_string(Family f);
std::string_view to_string(FineLabel l);
std::string_view to_string(ElementKind k);
std::optional<Family> parse_family(std::string_view s);
std::optional<FineLabel> parse_fine_label(std::string_view s);
std::optional<ElementKind> parse_element_kind(std::string_view s);

struct AnnotationClass {
  Family kind = Family::pii;
  FineLabel fine_label = FineLabel::name;
  ElementKind element_kind = ElementKind::text;

  // The canonical class for a label: family and element kind follow from it.
  static AnnotationClass of(FineLabel label);

  bool consistent() const;
  bool operator==(const AnnotationClass&) const = default;
};

// Integer pixel rectangle, origin top-left.
struct BBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  std::int64_t area() const { return static_cast<std::int64_t>(w) * h; }
  bool operator==(const BBox&) const = default;
};

struct ImageDims {
  int width = 0;
  int height = 0;
  bool operator==(const ImageDims&) const = default;
};

enum class Visibility { full, clipped };

std::string_view to_string(Visibility v);
std::optional<Visibility> parse_visibility(std::string_view s);

struct Annotation {
  BBox box;
  AnnotationClass cls;
  std::string source_key;  // config key; empty for input fields
  int line_index = 0;
  Visibility visibility = Visibility::full;

  bool operator==(const Annotation&) const = default;
};

enum class FillKind { empty, partial, full };

// "empty", "partial_<k>" or "full".
struct FillTag {
  FillKind kind = FillKind::full;
  int k = 0;  // stage index, only for partial

  static FillTag empty() { return {FillKind::empty, 0}; }
  static FillTag partial(int k) { return {FillKind::partial, k}; }
  static FillTag full() { return {FillKind::full, 0}; }

  std::string str() const;
  std::string_view group() const;  // "empty" | "partial" | "full"
  static std::optional<FillTag> parse(std::string_view s);

  bool operator==(const FillTag&) const = default;
};

struct SampleId {
  std::string layout_id;
  int variant_index = 0;
  FillTag fill;

  // "<layout>__v<variant>__<fill>"; also the file stem of exported images.
  std::string str() const;
  static std::optional<SampleId> parse(std::string_view s);

  bool operator==(const SampleId&) const = default;
};

struct AnnotatedSample {
  SampleId id;
  std::string image_ref;
  std::uint64_t config_seed = 0;
  ImageDims image_dims;
  std::vector<Annotation> annotations;

  bool operator==(const AnnotatedSample&) const = default;
};

struct Violation {
  std::string invariant;
  std::optional<std::size_t> annotation_index;
  std::string detail;
};

// Checks every record-level invariant; never throws.
std::vector<Violation> validate_sample(const AnnotatedSample& sample);

}  // namespace screenforge
