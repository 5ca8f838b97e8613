#include "screenforge/fill/planner.hpp"

#include <algorithm>
#include <charconv>

#include "screenforge/error.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::fill {

using templating::FieldDescriptor;
using templating::InputKind;

std::string_view to_string(FieldFill f) {
  switch (f) {
    case FieldFill::empty: return "empty";
    case FieldFill::prefix: return "prefix";
    case FieldFill::full: return "full";
  }
  return "?";
}

Density Density::parse(std::string_view s) {
  if (s == "all") return every();
  int n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) {
    throw Error(Errc::bad_density, "partial density must be 'all' or a count >= 1, got '" + std::string(s) + "'");
  }
  return sample(n);
}

std::string Density::str() const { return all ? "all" : std::to_string(n); }

FillPlan plan_states(int n_fields, Density density, Rng& rng) {
  if (!density.all && density.n < 1) {
    throw Error(Errc::bad_density, "sample density needs n >= 1, got " + std::to_string(density.n));
  }
  if (n_fields < 0) throw Error(Errc::invalid_argument, "negative field count");
  FillPlan plan{{}, density};
  if (n_fields == 0) {
    plan.states.push_back(FillTag::full());
    return plan;
  }
  std::vector<int> stages;
  for (int k = 1; k < n_fields; ++k) stages.push_back(k);
  if (!density.all && static_cast<int>(stages.size()) > density.n) {
    // Partial Fisher-Yates: the first n positions are a uniform sample.
    for (int i = 0; i < density.n; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.below(stages.size() - static_cast<std::size_t>(i));
      std::swap(stages[static_cast<std::size_t>(i)], stages[j]);
    }
    stages.resize(static_cast<std::size_t>(density.n));
    std::sort(stages.begin(), stages.end());
  }
  plan.states.push_back(FillTag::empty());
  for (int k : stages) plan.states.push_back(FillTag::partial(k));
  plan.states.push_back(FillTag::full());
  return plan;
}

PartialValue partial_value(std::string_view full_value, Rng& rng) {
  if (full_value.empty()) throw Error(Errc::empty_value, "cannot take a prefix of an empty value");
  const auto starts = utf8_starts(full_value);
  const std::size_t len = starts.size();
  if (len == 1) return {std::string(full_value), 1, true};
  const auto cut = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(len) - 1));
  return {std::string(full_value.substr(0, starts[cut])), cut, false};
}

namespace {

std::string full_value_of(const FieldDescriptor& d, const configgen::DataConfig& config) {
  if (d.input_kind == InputKind::checkbox) return "checked";
  if (d.bound_key.empty()) return "";
  return config.at(d.bound_key);
}

bool atomic(const FieldDescriptor& d) { return d.input_kind != InputKind::text; }

}  // namespace

FillState resolve_state(const FillTag& tag, const templating::LayoutTemplate& t, const configgen::DataConfig& config) {
  const auto fields = t.included_fields(config.included_optional_fields);
  const int n = static_cast<int>(fields.size());
  if (tag.kind == FillKind::partial && (tag.k < 1 || tag.k >= n)) {
    throw Error(Errc::fill_mismatch, "partial_" + std::to_string(tag.k) + " needs 1 <= k < " + std::to_string(n));
  }
  FillState state{tag, {}};
  for (int i = 0; i < n; ++i) {
    const FieldDescriptor& d = fields[static_cast<std::size_t>(i)];
    const int order = i + 1;  // position among included fields
    FieldState fs;
    if (tag.kind == FillKind::full || (tag.kind == FillKind::partial && order < tag.k)) {
      fs.fill = FieldFill::full;
    } else if (tag.kind == FillKind::partial && order == tag.k && !atomic(d)) {
      Rng rng(stable_hash(config.seed, {"prefix", d.field_id}));
      const PartialValue pv = partial_value(full_value_of(d, config), rng);
      fs.fill = FieldFill::prefix;
      fs.prefix_len = pv.length;
      fs.degenerate = pv.degenerate;
    }
    state.per_field[d.field_id] = fs;
  }
  return state;
}

FillPlan plan_for(const templating::LayoutTemplate& t, const configgen::DataConfig& config, Density density) {
  Rng rng(stable_hash(config.seed, {"plan"}));
  return plan_states(static_cast<int>(t.included_fields(config.included_optional_fields).size()), density, rng);
}

std::vector<std::string> check_fill_readback(const std::map<std::string, std::string>& shown, const FillState& state,
                                             const templating::LayoutTemplate& t,
                                             const configgen::DataConfig& config) {
  std::vector<std::string> out;
  const auto fields = t.included_fields(config.included_optional_fields);
  const int k = state.tag.kind == FillKind::partial ? state.tag.k : 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const FieldDescriptor& d = fields[i];
    const int order = static_cast<int>(i) + 1;
    auto it = shown.find(d.field_id);
    if (it == shown.end()) {
      out.push_back(d.field_id + ": control missing from document");
      continue;
    }
    const std::string& v = it->second;
    const std::string full = full_value_of(d, config);
    const bool want_full = state.tag.kind == FillKind::full || (state.tag.kind == FillKind::partial && order < k);
    const bool want_prefix = state.tag.kind == FillKind::partial && order == k && !atomic(d);
    if (want_full) {
      if (v != full) out.push_back(d.field_id + ": expected full value '" + full + "', shows '" + v + "'");
    } else if (want_prefix) {
      const bool is_prefix = !v.empty() && full.compare(0, v.size(), v) == 0;
      const bool strict = v.size() < full.size() || utf8_length(full) == 1;
      if (!is_prefix || !strict) out.push_back(d.field_id + ": expected a strict prefix of '" + full + "', shows '" + v + "'");
    } else if (!v.empty()) {
      out.push_back(d.field_id + ": expected empty, shows '" + v + "'");
    }
  }
  return out;
}

}  // namespace screenforge::fill
