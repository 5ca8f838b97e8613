#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/configgen/config.hpp"
#include "screenforge/core/model.hpp"
#include "screenforge/fill/state.hpp"
#include "screenforge/templating/html.hpp"

namespace screenforge::templating {

// The 19 page categories a layout may declare.
std::span<const std::string_view> page_types();
bool is_page_type(std::string_view s);

enum class InputKind { text, dropdown, checkbox };

std::string_view to_string(InputKind k);

struct FieldDescriptor {
  std::string field_id;
  InputKind input_kind = InputKind::text;
  std::string bound_key;         // config key supplying the typed value
  std::string placeholder_text;  // shown while empty
  bool optional = false;
  int fill_order = 0;           // 1..N
  std::string optional_group;   // enclosing data-optional id, empty if none

  bool operator==(const FieldDescriptor&) const = default;
};

// One element carrying an annotation attribute.
struct AnnotationSlot {
  AnnotationClass cls;
  std::vector<std::string> keys;  // placeholders it renders, in document order
  std::string field_id;           // form field, for input slots
  std::string optional_group;
  int line = 0;
  int column = 0;
};

struct LayoutTemplate {
  std::string layout_id;
  std::string brand;
  std::string page_type;
  std::string markup;
  Document dom;
  std::vector<FieldDescriptor> fields;  // sorted by fill_order
  configgen::LayoutDataSpec data_spec;
  std::vector<AnnotationSlot> slots;
  std::set<std::string> placeholder_keys;
  std::filesystem::path base_dir;  // relative asset references resolve here

  LayoutTemplate() = default;
  LayoutTemplate(const LayoutTemplate& o);
  LayoutTemplate& operator=(const LayoutTemplate& o);
  LayoutTemplate(LayoutTemplate&&) = default;
  LayoutTemplate& operator=(LayoutTemplate&&) = default;

  // Fields that survive optional-group removal, in fill order.
  std::vector<FieldDescriptor> included_fields(const std::set<std::string>& included_groups) const;
  const FieldDescriptor* field(std::string_view id) const;
};

// `meta` carries layout_id, brand, page_type, fields and data_spec. Throws
// ParseError (markup or meta problems, with position when known) and
// UnknownAttribute (unrecognized data-pii/-product/-order values).
LayoutTemplate parse_template(std::string_view markup, const nlohmann::json& meta,
                              const std::filesystem::path& base_dir = {});

// Reads layouts/<id>/{page.html, layout.meta}.
LayoutTemplate load_template(const std::filesystem::path& dir);

// Layout directories under `root` in id order.
std::vector<std::filesystem::path> list_layout_dirs(const std::filesystem::path& root);

// Maps an annotation attribute (family, value) to its fine label. Throws
// UnknownAttribute.
FineLabel resolve_label(Family family, std::string_view value);

enum class IssueKind {
  hardcoded_pii,
  missing_attribute,
  unknown_key,
  hardcoded_dropdown,
  missing_placeholder_option,
  empty_annotation,
  misplaced_input_label,
  placeholder_in_script,
};

std::string_view to_string(IssueKind k);

struct TemplateIssue {
  IssueKind kind;
  std::string detail;
  int line = 0;
  int column = 0;
};

std::vector<TemplateIssue> validate_template(const LayoutTemplate& t);

// Where a slot's value sits inside its element's text, in UTF-16 units.
struct SlotBinding {
  std::string key;  // "PII_FULLNAME", "PII_CITY+PII_STATE", "...#2" for repeats
  AnnotationClass cls;
  std::string field_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;  // the substituted value span
};

struct PageDocument {
  std::string html;
  std::vector<SlotBinding> slots;                   // document order
  std::map<std::string, std::string> field_values;  // field_id -> shown value
};

// Substitutes placeholders, drops excluded optional groups, bakes the fill
// state into form controls and marks annotated elements with data-sf-*
// attributes for the extractor. Throws MissingKey and FillMismatch.
PageDocument instantiate(const LayoutTemplate& t, const configgen::DataConfig& config, const fill::FillState& fill);

// What each data-field control shows in an instantiated document.
std::map<std::string, std::string> read_field_values(std::string_view html);

std::string file_url(const std::filesystem::path& path);

}  // namespace screenforge::templating
