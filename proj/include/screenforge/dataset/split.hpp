#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/configgen/config.hpp"

namespace screenforge::dataset {

enum class StrategyKind { cross_page, cross_company, cross_type };

struct SplitStrategy {
  StrategyKind kind = StrategyKind::cross_page;
  double frac = 0.2;        // cross_page only
  std::string attribute;    // brand or page type
  bool stratify_brand = false;

  // "cross-page:0.2", "cross-company:<brand>", "cross-type:<type>"; underscores
  // are accepted in the prefix. Throws InvalidArgument.
  static SplitStrategy parse(std::string_view s);
  std::string str() const;
};

struct LayoutInfo {
  std::string layout_id;
  std::string brand;
  std::string page_type;
};

struct SplitAssignment {
  SplitStrategy strategy;
  std::uint64_t seed = 0;
  std::set<std::string> train;
  std::set<std::string> test;

  // "train" | "test", nullopt for layouts outside the registry.
  std::optional<std::string> split_of(std::string_view layout_id) const;
};

// Number of layouts cross_page holds out of `total`: ceil(frac * total).
std::size_t cross_page_test_count(std::size_t total, double frac);

// Throws UnknownBrand / UnknownPageType when the hold-out attribute matches no
// layout, InvalidArgument for frac outside [0, 1].
SplitAssignment split(std::span<const LayoutInfo> layouts, const SplitStrategy& strategy, std::uint64_t seed);

nlohmann::json assignment_to_json(const SplitAssignment& a);
SplitAssignment assignment_from_json(const nlohmann::json& j);

struct LeakageFinding {
  std::string value;  // normalized
  std::set<std::string> keys;
  std::set<std::string> train_layouts;
  std::set<std::string> test_layouts;
};

// Identifying values (case-folded, whitespace-collapsed) that occur in a
// train-layout config and a test-layout config. One finding per value.
std::vector<LeakageFinding> check_leakage(const SplitAssignment& assignment,
                                          const std::map<std::string, std::vector<configgen::DataConfig>>& configs);

nlohmann::json leakage_to_json(std::span<const LeakageFinding> findings);

}  // namespace screenforge::dataset
