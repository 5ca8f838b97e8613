#include "screenforge/dataset/classmap.hpp"

#include "screenforge/error.hpp"

namespace screenforge::dataset {

ClassMap ClassMap::parse(std::string_view s) {
  if (s == "fine") return ClassMap(ClassMode::fine);
  if (s == "coarse") return ClassMap(ClassMode::coarse);
  throw Error(Errc::invalid_argument, "class mode must be fine or coarse, got '" + std::string(s) + "'");
}

std::string ClassMap::map(FineLabel label) const {
  if (mode_ == ClassMode::fine) return std::string(to_string(label));
  return label == FineLabel::product_image ? "image" : "text";
}

const std::vector<std::string>& ClassMap::categories() const {
  static const std::vector<std::string> fine = [] {
    std::vector<std::string> v;
    for (FineLabel l : kAllFineLabels) v.emplace_back(to_string(l));
    return v;
  }();
  static const std::vector<std::string> coarse = {"text", "image"};
  return mode_ == ClassMode::fine ? fine : coarse;
}

std::optional<int> ClassMap::category_index(std::string_view cls) const {
  const auto& cats = categories();
  for (std::size_t i = 0; i < cats.size(); ++i)
    if (cats[i] == cls) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<std::string> ClassMap::normalize(std::string_view cls) const {
  if (category_index(cls)) return std::string(cls);
  if (auto label = parse_fine_label(cls)) return map(*label);
  return std::nullopt;
}

}  // namespace screenforge::dataset
