#include "screenforge/dataset/stats.hpp"

#include <algorithm>
#include <vector>

namespace screenforge::dataset {

using nlohmann::json;

BoxDistribution distribution(std::span<const std::size_t> counts) {
  BoxDistribution d;
  if (counts.empty()) return d;
  std::vector<std::size_t> v(counts.begin(), counts.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  d.median = n % 2 ? static_cast<double>(v[n / 2]) : (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
  std::size_t sum = 0;
  for (auto c : v) sum += c;
  d.mean = static_cast<double>(sum) / static_cast<double>(n);
  d.min = v.front();
  d.max = v.back();
  return d;
}

StatsReport stats(std::span<const AnnotatedSample> samples, const std::map<std::string, std::string>& layout_brand,
                  const std::map<std::string, std::string>& layout_page_type) {
  StatsReport r;
  std::vector<std::size_t> counts;
  auto lookup = [](const std::map<std::string, std::string>& m, const std::string& id) {
    auto it = m.find(id);
    return it == m.end() ? std::string("unknown") : it->second;
  };
  for (const auto& s : samples) {
    ++r.images;
    counts.push_back(s.annotations.size());
    r.boxes += s.annotations.size();
    for (const auto& a : s.annotations) {
      ++r.per_class[std::string(to_string(a.cls.fine_label))];
      ++r.per_element_kind[std::string(to_string(a.cls.element_kind))];
    }
    ++r.per_fill_group[std::string(s.id.fill.group())];
    ++r.per_brand[lookup(layout_brand, s.id.layout_id)];
    ++r.per_page_type[lookup(layout_page_type, s.id.layout_id)];
  }
  r.boxes_per_image = distribution(counts);
  return r;
}

namespace {

json breakdown(const std::map<std::string, std::size_t>& m, std::size_t total) {
  json out = json::object();
  for (const auto& [k, n] : m)
    out[k] = {{"count", n}, {"percent", total ? 100.0 * static_cast<double>(n) / static_cast<double>(total) : 0.0}};
  return out;
}

}  // namespace

json stats_to_json(const StatsReport& r) {
  const auto& d = r.boxes_per_image;
  return json{{"images", r.images},
              {"boxes", r.boxes},
              {"boxes_per_image", {{"median", d.median}, {"mean", d.mean}, {"min", d.min}, {"max", d.max}}},
              {"classes", breakdown(r.per_class, r.boxes)},
              {"element_kinds", breakdown(r.per_element_kind, r.boxes)},
              {"fill_states", breakdown(r.per_fill_group, r.images)},
              {"brands", breakdown(r.per_brand, r.images)},
              {"page_types", breakdown(r.per_page_type, r.images)}};
}

}  // namespace screenforge::dataset
