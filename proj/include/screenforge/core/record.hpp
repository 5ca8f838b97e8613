#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"

namespace screenforge {

inline constexpr int kRecordSchema = 1;

nlohmann::json annotation_to_json(const Annotation& a);
Annotation annotation_from_json(const nlohmann::json& j);

nlohmann::json sample_to_json(const AnnotatedSample& sample);
AnnotatedSample sample_from_json(const nlohmann::json& j);

// One UTF-8 JSON document per sample with a `schema` header field.
std::string serialize_record(const AnnotatedSample& sample);
AnnotatedSample parse_record(std::string_view text);

void write_record(const std::filesystem::path& path, const AnnotatedSample& sample);
AnnotatedSample read_record(const std::filesystem::path& path);

}  // namespace screenforge
