#pragma once

#include <map>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"

namespace screenforge::dataset {

struct BoxDistribution {
  double median = 0.0;
  double mean = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
};

struct StatsReport {
  std::size_t images = 0;
  std::size_t boxes = 0;
  BoxDistribution boxes_per_image;
  std::map<std::string, std::size_t> per_class;       // fine label
  std::map<std::string, std::size_t> per_element_kind;
  std::map<std::string, std::size_t> per_fill_group;  // images
  std::map<std::string, std::size_t> per_brand;       // images
  std::map<std::string, std::size_t> per_page_type;   // images
};

// Median of an even count is the mean of the two middle values.
BoxDistribution distribution(std::span<const std::size_t> counts);

// `layout_brand` / `layout_page_type` map layout ids to attributes; layouts
// missing from them count under "unknown".
StatsReport stats(std::span<const AnnotatedSample> samples, const std::map<std::string, std::string>& layout_brand = {},
                  const std::map<std::string, std::string>& layout_page_type = {});

// Counts plus percentages of the relevant totals.
nlohmann::json stats_to_json(const StatsReport& r);

}  // namespace screenforge::dataset
