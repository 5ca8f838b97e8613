#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "screenforge/core/model.hpp"

namespace screenforge::dataset {

enum class ClassMode { fine, coarse };

// fine: the nine labels; coarse: product_image -> "image", all else -> "text".
class ClassMap {
 public:
  explicit ClassMap(ClassMode mode = ClassMode::fine) : mode_(mode) {}
  static ClassMap parse(std::string_view s);  // "fine" | "coarse"

  ClassMode mode() const { return mode_; }
  std::string_view name() const { return mode_ == ClassMode::fine ? "fine" : "coarse"; }
  std::string map(FineLabel label) const;
  const std::vector<std::string>& categories() const;
  std::optional<int> category_index(std::string_view cls) const;
  // Accepts a category of this map, or a fine label that it maps.
  std::optional<std::string> normalize(std::string_view cls) const;

 private:
  ClassMode mode_;
};

}  // namespace screenforge::dataset
