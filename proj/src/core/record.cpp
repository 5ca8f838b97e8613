#include "screenforge/core/record.hpp"

#include "screenforge/error.hpp"
#include "screenforge/util/fs.hpp"

namespace screenforge {

using nlohmann::json;

namespace {

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::schema_mismatch, std::string("record missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::schema_mismatch, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T, typename Parser>
T parse_enum(const json& j, const char* key, Parser parser) {
  const auto text = require<std::string>(j, key);
  auto value = parser(text);
  if (!value) throw Error(Errc::schema_mismatch, std::string("bad ") + key + " '" + text + "'");
  return *value;
}

}  // namespace

json annotation_to_json(const Annotation& a) {
  return json{{"x", a.box.x},
              {"y", a.box.y},
              {"w", a.box.w},
              {"h", a.box.h},
              {"kind", to_string(a.cls.kind)},
              {"label", to_string(a.cls.fine_label)},
              {"element_kind", to_string(a.cls.element_kind)},
              {"source_key", a.source_key},
              {"line_index", a.line_index},
              {"visibility", to_string(a.visibility)}};
}

Annotation annotation_from_json(const json& j) {
  Annotation a;
  a.box = BBox{require<int>(j, "x"), require<int>(j, "y"), require<int>(j, "w"), require<int>(j, "h")};
  a.cls.kind = parse_enum<Family>(j, "kind", parse_family);
  a.cls.fine_label = parse_enum<FineLabel>(j, "label", parse_fine_label);
  a.cls.element_kind = parse_enum<ElementKind>(j, "element_kind", parse_element_kind);
  a.source_key = require<std::string>(j, "source_key");
  a.line_index = require<int>(j, "line_index");
  a.visibility = parse_enum<Visibility>(j, "visibility", parse_visibility);
  return a;
}

json sample_to_json(const AnnotatedSample& s) {
  json anns = json::array();
  for (const auto& a : s.annotations) anns.push_back(annotation_to_json(a));
  return json{{"schema", kRecordSchema},
              {"sample_id", s.id.str()},
              {"layout_id", s.id.layout_id},
              {"variant_index", s.id.variant_index},
              {"fill_state", s.id.fill.str()},
              {"image_ref", s.image_ref},
              {"config_seed", s.config_seed},
              {"image_dims", {{"width", s.image_dims.width}, {"height", s.image_dims.height}}},
              {"annotations", std::move(anns)}};
}

AnnotatedSample sample_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::schema_mismatch, "record is not an object");
  const int schema = require<int>(j, "schema");
  if (schema != kRecordSchema) throw Error(Errc::schema_mismatch, "unsupported record schema " + std::to_string(schema));
  AnnotatedSample s;
  s.id.layout_id = require<std::string>(j, "layout_id");
  s.id.variant_index = require<int>(j, "variant_index");
  s.id.fill = parse_enum<FillTag>(j, "fill_state", FillTag::parse);
  s.image_ref = require<std::string>(j, "image_ref");
  s.config_seed = require<std::uint64_t>(j, "config_seed");
  const json& dims = j.at("image_dims");
  s.image_dims = ImageDims{require<int>(dims, "width"), require<int>(dims, "height")};
  for (const json& a : require<json>(j, "annotations")) s.annotations.push_back(annotation_from_json(a));
  return s;
}

std::string serialize_record(const AnnotatedSample& sample) { return sample_to_json(sample).dump(2) + "\n"; }

AnnotatedSample parse_record(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("annotation record: ") + e.what());
  }
  return sample_from_json(j);
}

void write_record(const std::filesystem::path& path, const AnnotatedSample& sample) {
  write_file_atomic(path, serialize_record(sample));
}

AnnotatedSample read_record(const std::filesystem::path& path) { return parse_record(read_file(path)); }

}  // namespace screenforge
