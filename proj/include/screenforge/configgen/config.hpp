#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/catalog/catalog.hpp"

namespace screenforge::configgen {

enum class ValueType { string, currency, date, image_ref };
enum class Provenance { synthetic_pii, catalog, extracted, randomized, derived };

std::string_view to_string(ValueType t);
std::string_view to_string(Provenance p);

struct ConfigValue {
  ValueType type = ValueType::string;
  std::string value;
  Provenance provenance = Provenance::synthetic_pii;

  bool operator==(const ConfigValue&) const = default;
};

// Which half of the seed-partitioned value pools a config draws from. Train
// and test layouts drawing from opposite halves cannot share names, streets,
// cities or products.
enum class PoolPartition { all, train, test };

std::string_view to_string(PoolPartition p);

struct DataConfig {
  std::string layout_id;
  int variant_index = 0;
  std::uint64_t seed = 0;
  PoolPartition partition = PoolPartition::all;
  std::map<std::string, ConfigValue> values;
  std::set<std::string> included_optional_fields;

  const std::string& at(const std::string& key) const;
  bool operator==(const DataConfig&) const = default;
};

// '#' digit, '@' uppercase letter, '*' uppercase letter or digit; a backslash
// makes the next wildcard or backslash literal. Charsets may be overridden.
struct IdFormatTemplate {
  std::string pattern;
  std::map<char, std::string> charsets;

  static IdFormatTemplate of(std::string pattern);
};

struct OptionalField {
  std::string id;
  double probability = 0.5;
};

struct LayoutDataSpec {
  std::set<std::string> required_keys;
  std::vector<OptionalField> optional_fields;
  std::map<std::string, std::set<std::string>> optional_keys;  // group id -> keys used only inside it
  std::map<std::string, std::string> extracted_constants;       // e.g. SHIPPING_COST, TAX_RATE
  std::map<std::string, IdFormatTemplate> id_formats;

  std::set<std::string> all_keys() const;
};

// Checks the numeric constraints on extracted constants and probabilities.
std::vector<std::string> check_data_spec(const LayoutDataSpec& spec);

bool has_generator(std::string_view key, const LayoutDataSpec& spec);

std::string format_id(const IdFormatTemplate& tmpl, std::uint64_t seed);

// Recomputes ORDER_SUBTOTAL, ORDER_TAX and ORDER_TOTAL from PRODUCT<n>_PRICE /
// PRODUCT<n>_QTY, SHIPPING_COST and TAX_RATE in exact cents. Tax is charged on
// the subtotal only and rounded half-to-even. Idempotent.
std::map<std::string, ConfigValue> derive_values(std::map<std::string, ConfigValue> values, const LayoutDataSpec& spec);

std::uint64_t config_seed(std::uint64_t master_seed, std::string_view layout_id, int variant_index);

struct GenerateOptions {
  PoolPartition partition = PoolPartition::all;
};

DataConfig generate_config(const LayoutDataSpec& spec, const catalog::Catalog& catalog, std::uint64_t master_seed,
                           std::string_view layout_id, int variant_index, const GenerateOptions& options = {});

// Keys whose values identify a person, order or product; the leakage check
// compares only these.
bool is_identifying_key(std::string_view key);

nlohmann::json config_to_json(const DataConfig& config);
DataConfig config_from_json(const nlohmann::json& j);
std::filesystem::path config_path(const std::filesystem::path& root, std::string_view layout_id, int variant_index);
void write_config(const std::filesystem::path& root, const DataConfig& config);
DataConfig read_config(const std::filesystem::path& path);

nlohmann::json data_spec_to_json(const LayoutDataSpec& spec);
LayoutDataSpec data_spec_from_json(const nlohmann::json& j);

}  // namespace screenforge::configgen
