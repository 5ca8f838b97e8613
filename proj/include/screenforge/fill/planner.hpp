#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "screenforge/configgen/config.hpp"
#include "screenforge/fill/state.hpp"
#include "screenforge/templating/template.hpp"
#include "screenforge/util/rng.hpp"

namespace screenforge::fill {

// How many partial stages a plan keeps: all N-1 of them, or a sample of n.
struct Density {
  bool all = true;
  int n = 0;

  static Density every() { return {true, 0}; }
  static Density sample(int n) { return {false, n}; }
  // "all" or a positive count. Throws BadDensity.
  static Density parse(std::string_view s);
  std::string str() const;
};

struct FillPlan {
  std::vector<FillTag> states;  // empty, partial_k ascending, full
  Density density;
};

// N = 0 gives [full]. Sampled stage indices are drawn without replacement.
// Throws BadDensity when a sample size is below 1.
FillPlan plan_states(int n_fields, Density density, Rng& rng);

struct PartialValue {
  std::string value;
  std::size_t length = 0;  // code points kept
  bool degenerate = false;
};

// A strict prefix cut uniformly at a code-point boundary in 1..len-1. A
// one-character value is returned whole and flagged. Throws EmptyValue.
PartialValue partial_value(std::string_view full_value, Rng& rng);

// Per-field states for `tag` over the fields the config includes. Dropdowns
// and checkboxes are atomic: as the mid-typing field they stay unselected.
FillState resolve_state(const FillTag& tag, const templating::LayoutTemplate& t, const configgen::DataConfig& config);

// The plan for one (layout, variant), seeded from the config.
FillPlan plan_for(const templating::LayoutTemplate& t, const configgen::DataConfig& config, Density density);

// Compares what the controls of an instantiated document show against the
// fill invariant; returns one message per violation.
std::vector<std::string> check_fill_readback(const std::map<std::string, std::string>& shown, const FillState& state,
                                             const templating::LayoutTemplate& t,
                                             const configgen::DataConfig& config);

}  // namespace screenforge::fill
