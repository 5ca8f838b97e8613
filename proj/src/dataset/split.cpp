#include "screenforge/dataset/split.hpp"

#include <algorithm>
#include <cmath>

#include "screenforge/error.hpp"
#include "screenforge/util/rng.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::dataset {

using nlohmann::json;

namespace {

std::string_view kind_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::cross_page: return "cross-page";
    case StrategyKind::cross_company: return "cross-company";
    case StrategyKind::cross_type: return "cross-type";
  }
  return "?";
}

std::string dashed(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

// Random subset of `ids` (already in id order) of the given size.
std::vector<std::string> sample_ids(std::vector<std::string> ids, std::size_t count, Rng& rng) {
  rng.shuffle(std::span<std::string>(ids));
  ids.resize(std::min(count, ids.size()));
  return ids;
}

}  // namespace

SplitStrategy SplitStrategy::parse(std::string_view s) {
  const auto colon = s.find(':');
  const std::string head = dashed(s.substr(0, colon));
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  SplitStrategy out;
  if (head == "cross-page") {
    out.kind = StrategyKind::cross_page;
    if (!arg.empty()) {
      try {
        std::size_t used = 0;
        out.frac = std::stod(std::string(arg), &used);
        if (used != arg.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(Errc::invalid_argument, "bad cross-page fraction '" + std::string(arg) + "'");
      }
    }
    if (!(out.frac >= 0.0 && out.frac <= 1.0))
      throw Error(Errc::invalid_argument, "cross-page fraction must be in [0, 1]");
    return out;
  }
  if (head != "cross-company" && head != "cross-type")
    throw Error(Errc::invalid_argument, "unknown split strategy '" + std::string(s) + "'");
  if (arg.empty()) throw Error(Errc::invalid_argument, head + " needs an attribute after ':'");
  out.kind = head == "cross-company" ? StrategyKind::cross_company : StrategyKind::cross_type;
  out.attribute = std::string(arg);
  return out;
}

std::string SplitStrategy::str() const {
  std::string out(kind_name(kind));
  out.push_back(':');
  if (kind == StrategyKind::cross_page) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", frac);
    out += buf;
  } else {
    out += attribute;
  }
  return out;
}

std::optional<std::string> SplitAssignment::split_of(std::string_view layout_id) const {
  const std::string id(layout_id);
  if (train.count(id)) return "train";
  if (test.count(id)) return "test";
  return std::nullopt;
}

std::size_t cross_page_test_count(std::size_t total, double frac) {
  // The epsilon keeps exact products such as 0.2 * 410 from rounding up.
  const double want = std::ceil(frac * static_cast<double>(total) - 1e-9);
  return std::min(total, static_cast<std::size_t>(std::max(0.0, want)));
}

SplitAssignment split(std::span<const LayoutInfo> layouts, const SplitStrategy& strategy, std::uint64_t seed) {
  SplitAssignment out;
  out.strategy = strategy;
  out.seed = seed;
  std::vector<const LayoutInfo*> sorted;
  for (const auto& l : layouts) sorted.push_back(&l);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->layout_id < b->layout_id; });

  std::set<std::string> test;
  switch (strategy.kind) {
    case StrategyKind::cross_page: {
      if (!(strategy.frac >= 0.0 && strategy.frac <= 1.0))
        throw Error(Errc::invalid_argument, "cross-page fraction must be in [0, 1]");
      Rng rng(stable_hash(seed, {"split", strategy.str()}));
      const std::size_t k = cross_page_test_count(sorted.size(), strategy.frac);
      if (!strategy.stratify_brand) {
        std::vector<std::string> ids;
        for (auto* l : sorted) ids.push_back(l->layout_id);
        for (auto& id : sample_ids(std::move(ids), k, rng)) test.insert(id);
        break;
      }
      // Largest-remainder allocation of k across brands, then a uniform
      // sample inside each brand.
      std::map<std::string, std::vector<std::string>> by_brand;
      for (auto* l : sorted) by_brand[l->brand].push_back(l->layout_id);
      struct Quota {
        std::string brand;
        std::size_t n;
        double rem;
      };
      std::vector<Quota> quotas;
      std::size_t given = 0;
      for (auto& [brand, ids] : by_brand) {
        const double exact = strategy.frac * static_cast<double>(ids.size());
        const auto base = static_cast<std::size_t>(std::floor(exact + 1e-9));
        quotas.push_back({brand, base, exact - static_cast<double>(base)});
        given += base;
      }
      std::vector<std::size_t> order(quotas.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return quotas[a].rem > quotas[b].rem; });
      for (std::size_t i = 0; given < k && i < order.size(); ++i) {
        auto& q = quotas[order[i]];
        if (q.n < by_brand[q.brand].size()) {
          ++q.n;
          ++given;
        }
      }
      for (auto& q : quotas)
        for (auto& id : sample_ids(by_brand[q.brand], q.n, rng)) test.insert(id);
      break;
    }
    case StrategyKind::cross_company:
    case StrategyKind::cross_type: {
      const bool by_brand = strategy.kind == StrategyKind::cross_company;
      for (auto* l : sorted)
        if ((by_brand ? l->brand : l->page_type) == strategy.attribute) test.insert(l->layout_id);
      if (test.empty()) {
        throw Error(by_brand ? Errc::unknown_brand : Errc::unknown_page_type,
                    std::string(by_brand ? "no layout has brand '" : "no layout has page type '") + strategy.attribute +
                        "'");
      }
      break;
    }
  }
  for (auto* l : sorted) (test.count(l->layout_id) ? out.test : out.train).insert(l->layout_id);
  return out;
}

json assignment_to_json(const SplitAssignment& a) {
  return json{{"strategy", a.strategy.str()},
              {"stratify_brand", a.strategy.stratify_brand},
              {"seed", a.seed},
              {"train", a.train},
              {"test", a.test}};
}

SplitAssignment assignment_from_json(const json& j) {
  try {
    SplitAssignment a;
    a.strategy = SplitStrategy::parse(j.at("strategy").get<std::string>());
    a.strategy.stratify_brand = j.value("stratify_brand", false);
    a.seed = j.at("seed").get<std::uint64_t>();
    a.train = j.at("train").get<std::set<std::string>>();
    a.test = j.at("test").get<std::set<std::string>>();
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("split assignment: ") + e.what());
  }
}

std::vector<LeakageFinding> check_leakage(const SplitAssignment& assignment,
                                          const std::map<std::string, std::vector<configgen::DataConfig>>& configs) {
  struct Seen {
    std::set<std::string> keys;
    std::set<std::string> train, test;
  };
  std::map<std::string, Seen> values;
  for (const auto& [layout, list] : configs) {
    const auto side = assignment.split_of(layout);
    if (!side) continue;
    for (const auto& config : list) {
      for (const auto& [key, v] : config.values) {
        if (!configgen::is_identifying_key(key)) continue;
        std::string norm = normalize_for_match(v.value);
        if (norm.empty()) continue;
        auto& seen = values[norm];
        seen.keys.insert(key);
        (*side == "train" ? seen.train : seen.test).insert(layout);
      }
    }
  }
  std::vector<LeakageFinding> out;
  for (auto& [value, seen] : values) {
    if (seen.train.empty() || seen.test.empty()) continue;
    out.push_back({value, seen.keys, seen.train, seen.test});
  }
  return out;
}

json leakage_to_json(std::span<const LeakageFinding> findings) {
  json arr = json::array();
  for (const auto& f : findings)
    arr.push_back({{"value", f.value}, {"keys", f.keys}, {"train_layouts", f.train_layouts}, {"test_layouts", f.test_layouts}});
  return arr;
}

}  // namespace screenforge::dataset
