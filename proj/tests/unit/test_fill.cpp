#include <doctest.h>

#include <set>

#include "screenforge/catalog/catalog.hpp"
#include "screenforge/configgen/config.hpp"
#include "screenforge/error.hpp"
#include "screenforge/fill/planner.hpp"
#include "screenforge/templating/template.hpp"
#include "support/common.hpp"

using namespace screenforge;
using namespace screenforge::fill;

namespace {

const catalog::Catalog& fixture_catalog() {
  static const catalog::Catalog c = catalog::Catalog::ingest(
      catalog::load_ndjson(testing::fixtures() / "catalog" / "products.ndjson"), testing::fixtures() / "catalog");
  return c;
}

std::size_t code_points(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

}  // namespace

TEST_CASE("a plan has N+1 states, or one when N is zero") {
  Rng rng(1);
  for (int n = 0; n <= 12; ++n) {
    const FillPlan p = plan_states(n, Density::every(), rng);
    CHECK(p.states.size() == static_cast<std::size_t>(n == 0 ? 1 : n + 1));
    CHECK(p.states.back() == FillTag::full());
    if (n > 0) CHECK(p.states.front() == FillTag::empty());
    for (int k = 1; k < n; ++k) CHECK(p.states[static_cast<std::size_t>(k)] == FillTag::partial(k));
  }
  CHECK(plan_states(7, Density::every(), rng).states.size() == 8);
}

TEST_CASE("sampled density keeps n distinct ascending partial stages") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.between(2, 10));
    const int keep = static_cast<int>(rng.between(1, 12));
    const FillPlan p = plan_states(n, Density::sample(keep), rng);
    const std::size_t partials = static_cast<std::size_t>(std::min(keep, n - 1));
    REQUIRE(p.states.size() == partials + 2);
    int last = 0;
    for (std::size_t i = 1; i + 1 < p.states.size(); ++i) {
      CHECK(p.states[i].kind == FillKind::partial);
      CHECK(p.states[i].k > last);
      CHECK(p.states[i].k < n);
      last = p.states[i].k;
    }
  }
  CHECK_THROWS_AS(plan_states(4, Density::sample(0), rng), Error);
  CHECK(Density::parse("all").all);
  CHECK(Density::parse("3").n == 3);
  CHECK_THROWS_AS(Density::parse("0"), Error);
  CHECK_THROWS_AS(Density::parse("lots"), Error);
}

TEST_CASE("partial values are strict code-point prefixes") {
  Rng rng(11);
  for (const std::string v : {"Ada Lovelace", "Zoë", "東京都", "ab", "x"}) {
    for (int i = 0; i < 50; ++i) {
      const PartialValue p = partial_value(v, rng);
      CHECK(v.compare(0, p.value.size(), p.value) == 0);
      CHECK(code_points(p.value) == p.length);
      if (code_points(v) == 1) {
        CHECK(p.degenerate);
        CHECK(p.value == v);
      } else {
        CHECK_FALSE(p.degenerate);
        CHECK(p.length >= 1);
        CHECK(p.length < code_points(v));
      }
    }
  }
  CHECK_THROWS_AS(partial_value("", rng), Error);
}

TEST_CASE("resolved states are monotone and read back from the document") {
  for (const auto& dir : templating::list_layout_dirs(testing::fixtures() / "layouts")) {
    const auto t = templating::load_template(dir);
    for (int v = 0; v < 5; ++v) {
      const auto c = configgen::generate_config(t.data_spec, fixture_catalog(), 42, t.layout_id, v);
      const auto fields = t.included_fields(c.included_optional_fields);
      const FillPlan plan = plan_for(t, c, Density::every());
      CHECK(plan.states.size() == (fields.empty() ? 1 : fields.size() + 1));
      for (const auto& tag : plan.states) {
        const FillState s = resolve_state(tag, t, c);
        CHECK(s.per_field.size() == fields.size());
        // partial(k): orders below k full, order k mid-typing, the rest empty.
        for (std::size_t i = 0; i < fields.size(); ++i) {
          const int order = static_cast<int>(i) + 1;
          const auto& st = s.per_field.at(fields[i].field_id);
          INFO(t.layout_id << " " << tag.str() << " " << fields[i].field_id);
          if (tag.kind == FillKind::full || (tag.kind == FillKind::partial && order < tag.k)) {
            CHECK(st.fill == FieldFill::full);
          } else if (tag.kind == FillKind::partial && order == tag.k) {
            const bool atomic = fields[i].input_kind != templating::InputKind::text;
            CHECK(st.fill == (atomic ? FieldFill::empty : FieldFill::prefix));
          } else {
            CHECK(st.fill == FieldFill::empty);
          }
        }
        const auto page = templating::instantiate(t, c, s);
        CHECK(check_fill_readback(page.field_values, s, t, c).empty());
      }
    }
  }
}

TEST_CASE("readback reports a control showing the wrong value") {
  const auto t = templating::load_template(testing::fixtures() / "layouts" / "northwind_sign_in");
  const auto c = configgen::generate_config(t.data_spec, fixture_catalog(), 42, t.layout_id, 0);
  const FillState s = resolve_state(FillTag::full(), t, c);
  auto page = templating::instantiate(t, c, s);
  CHECK(check_fill_readback(page.field_values, s, t, c).empty());
  page.field_values["user"] = "tampered";
  CHECK(check_fill_readback(page.field_values, s, t, c).size() == 1);
  page.field_values.erase("email");
  CHECK(check_fill_readback(page.field_values, s, t, c).size() == 2);
}

TEST_CASE("plans are deterministic per config") {
  const auto t = templating::load_template(testing::fixtures() / "layouts" / "acme_checkout");
  const auto c = configgen::generate_config(t.data_spec, fixture_catalog(), 42, t.layout_id, 1);
  const FillPlan a = plan_for(t, c, Density::sample(2));
  const FillPlan b = plan_for(t, c, Density::sample(2));
  CHECK(a.states == b.states);
  for (const auto& tag : a.states) CHECK(resolve_state(tag, t, c) == resolve_state(tag, t, c));
}
