#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "screenforge/core/model.hpp"

namespace screenforge::fill {

enum class FieldFill { empty, prefix, full };

std::string_view to_string(FieldFill f);

struct FieldState {
  FieldFill fill = FieldFill::empty;
  std::size_t prefix_len = 0;  // code points, only for prefix
  bool degenerate = false;     // one-character value shown whole

  bool operator==(const FieldState&) const = default;
};

// A concrete fill state: the tag plus what each form field shows.
struct FillState {
  FillTag tag;
  std::map<std::string, FieldState> per_field;  // field_id -> state

  bool operator==(const FillState&) const = default;
};

}  // namespace screenforge::fill
