#include <doctest.h>

#include <set>

#include "screenforge/catalog/catalog.hpp"
#include "screenforge/configgen/config.hpp"
#include "screenforge/dataset/classmap.hpp"
#include "screenforge/dataset/split.hpp"
#include "screenforge/dataset/stats.hpp"
#include "screenforge/error.hpp"
#include "screenforge/templating/template.hpp"
#include "support/builders.hpp"
#include "support/common.hpp"

using namespace screenforge;
using namespace screenforge::dataset;

using testing::cart_spec;
using testing::fixture_catalog;
using testing::registry_408;

namespace {

configgen::DataConfig planted(const std::string& layout, const std::string& key, const std::string& value) {
  configgen::DataConfig c;
  c.layout_id = layout;
  c.values[key] = {configgen::ValueType::string, value, configgen::Provenance::synthetic_pii};
  return c;
}

}  // namespace

TEST_CASE("split sizes on the 408-layout registry") {
  const auto reg = registry_408();
  const auto page = split(reg, SplitStrategy::parse("cross-page:0.2"), 42);
  CHECK(page.test.size() == 82);
  CHECK(page.train.size() == 326);
  const auto company = split(reg, SplitStrategy::parse("cross-company:bigshop"), 42);
  CHECK(company.test.size() == 56);
  for (const auto& id : company.test) CHECK(std::stoi(id.substr(1)) - 1000 < 56);
  const auto type = split(reg, SplitStrategy::parse("cross_type:gifting"), 42);
  CHECK(type.test.size() == 20);
  CHECK(type.train.size() == 388);
  CHECK(cross_page_test_count(408, 0.2) == 82);
  CHECK(cross_page_test_count(10, 0.2) == 2);
  CHECK(cross_page_test_count(5, 0.2) == 1);
  CHECK(cross_page_test_count(7, 0.0) == 0);
  CHECK(cross_page_test_count(7, 1.0) == 7);
}

TEST_CASE("splits partition the registry and depend only on the seed") {
  const auto reg = registry_408();
  for (const char* s : {"cross-page:0.2", "cross-page:0.35", "cross-company:brand3", "cross-type:receipt"}) {
    const auto a = split(reg, SplitStrategy::parse(s), 7);
    CHECK(a.train.size() + a.test.size() == reg.size());
    for (const auto& id : a.test) CHECK_FALSE(a.train.count(id));
    const auto b = split(reg, SplitStrategy::parse(s), 7);
    CHECK(a.test == b.test);
    auto shuffled = reg;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(split(shuffled, SplitStrategy::parse(s), 7).test == a.test);
    const auto back = assignment_from_json(assignment_to_json(a));
    CHECK(back.test == a.test);
    CHECK(back.train == a.train);
    CHECK(back.strategy.str() == a.strategy.str());
  }
  CHECK(split(reg, SplitStrategy::parse("cross-page:0.2"), 1).test != split(reg, SplitStrategy::parse("cross-page:0.2"), 2).test);
}

TEST_CASE("stratified cross-page keeps every brand's share") {
  const auto reg = registry_408();
  auto strat = SplitStrategy::parse("cross-page:0.2");
  strat.stratify_brand = true;
  const auto a = split(reg, strat, 42);
  CHECK(a.test.size() == 82);
  std::map<std::string, int> total, held;
  for (const auto& l : reg) {
    ++total[l.brand];
    if (a.test.count(l.layout_id)) ++held[l.brand];
  }
  for (const auto& [brand, n] : total) {
    const double exact = 0.2 * n;
    INFO(brand);
    CHECK(held[brand] >= static_cast<int>(std::floor(exact)));
    CHECK(held[brand] <= static_cast<int>(std::ceil(exact)));
  }
}

TEST_CASE("strategy parsing and unknown hold-outs") {
  CHECK(SplitStrategy::parse("cross-page:0.2").str() == "cross-page:0.2");
  CHECK(SplitStrategy::parse("cross_company:acme").kind == StrategyKind::cross_company);
  CHECK_THROWS_AS(SplitStrategy::parse("random:0.2"), Error);
  CHECK_THROWS_AS(SplitStrategy::parse("cross-page:1.5"), Error);
  CHECK_THROWS_AS(SplitStrategy::parse("cross-page:x"), Error);
  const auto reg = registry_408();
  try {
    split(reg, SplitStrategy::parse("cross-company:nobody"), 1);
    FAIL("expected UnknownBrand");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_brand);
  }
  try {
    split(reg, SplitStrategy::parse("cross-type:product_page"), 1);
    FAIL("expected UnknownPageType");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_page_type);
  }
}

TEST_CASE("leakage: a planted shared name is one finding naming both layouts") {
  SplitAssignment a;
  a.train = {"t1", "t2"};
  a.test = {"s1"};
  std::map<std::string, std::vector<configgen::DataConfig>> configs;
  configs["t1"] = {planted("t1", "PII_FULLNAME", "Marc Arnold")};
  configs["t2"] = {planted("t2", "PII_FULLNAME", "Ada Byron")};
  configs["s1"] = {planted("s1", "PII_CARD_HOLDER", "marc   ARNOLD")};
  auto findings = check_leakage(a, configs);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].value == "marc arnold");
  CHECK(findings[0].keys == std::set<std::string>{"PII_CARD_HOLDER", "PII_FULLNAME"});
  CHECK(findings[0].train_layouts == std::set<std::string>{"t1"});
  CHECK(findings[0].test_layouts == std::set<std::string>{"s1"});
  CHECK(leakage_to_json(findings).size() == 1);

  // Shared non-identifying values (a state code) are not leakage.
  configs["t1"] = {planted("t1", "PII_STATE", "CA")};
  configs["s1"] = {planted("s1", "PII_STATE", "CA")};
  CHECK(check_leakage(a, configs).empty());
}

TEST_CASE("leakage: seed-partitioned pools give an empty report on a full cross-join") {
  std::vector<templating::LayoutTemplate> layouts;
  for (const auto& d : templating::list_layout_dirs(testing::fixtures() / "layouts")) layouts.push_back(templating::load_template(d));
  // 50 layouts: the ten fixtures under five aliases each.
  std::vector<LayoutInfo> infos;
  std::map<std::string, const templating::LayoutTemplate*> by_id;
  for (int alias = 0; alias < 5; ++alias) {
    for (const auto& t : layouts) {
      const std::string id = t.layout_id + "_" + std::to_string(alias);
      infos.push_back({id, t.brand, t.page_type});
      by_id[id] = &t;
    }
  }
  const auto a = split(infos, SplitStrategy::parse("cross-page:0.2"), 42);
  std::map<std::string, std::vector<configgen::DataConfig>> configs;
  std::map<std::string, std::set<std::string>> side_values[2];  // normalized value -> layouts
  for (const auto& [id, t] : by_id) {
    configgen::GenerateOptions o;
    const bool test = a.test.count(id) > 0;
    o.partition = test ? configgen::PoolPartition::test : configgen::PoolPartition::train;
    for (int v = 0; v < 5; ++v) {
      auto c = configgen::generate_config(t->data_spec, fixture_catalog(), 42, id, v, o);
      for (const auto& [k, val] : c.values) {
        if (!configgen::is_identifying_key(k)) continue;
        std::string norm;
        for (char ch : val.value) norm += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        side_values[test ? 1 : 0][norm].insert(id);
      }
      configs[id].push_back(std::move(c));
    }
  }
  std::size_t shared = 0;
  for (const auto& [v, ids] : side_values[0]) shared += side_values[1].count(v);
  CHECK(shared == 0);
  CHECK(check_leakage(a, configs).empty());

  // Without partitioning, the same cross-join does collide.
  std::map<std::string, std::vector<configgen::DataConfig>> unpartitioned;
  for (const auto& [id, t] : by_id)
    for (int v = 0; v < 5; ++v) unpartitioned[id].push_back(configgen::generate_config(t->data_spec, fixture_catalog(), 42, id, v));
  CHECK_FALSE(check_leakage(a, unpartitioned).empty());
}

TEST_CASE("class maps") {
  const ClassMap fine(ClassMode::fine), coarse(ClassMode::coarse);
  CHECK(fine.categories().size() == 9);
  CHECK(coarse.categories() == std::vector<std::string>{"text", "image"});
  CHECK(coarse.map(FineLabel::product_image) == "image");
  for (FineLabel l : kAllFineLabels) {
    if (l != FineLabel::product_image) CHECK(coarse.map(l) == "text");
    CHECK(fine.map(l) == to_string(l));
  }
  CHECK(coarse.normalize("address") == std::optional<std::string>("text"));
  CHECK_FALSE(fine.normalize("text"));
  CHECK(fine.category_index("input_field") == 8);
}

TEST_CASE("stats distributions") {
  const std::size_t odd[] = {40, 3, 19};
  const auto d = distribution(odd);
  CHECK(d.median == 19.0);
  CHECK(d.mean == doctest::Approx(62.0 / 3));
  CHECK(d.min == 3);
  CHECK(d.max == 40);
  const std::size_t even[] = {1, 4, 2, 10};
  CHECK(distribution(even).median == 3.0);

  std::vector<AnnotatedSample> samples(3);
  const int boxes[] = {3, 19, 40};
  const FillTag tags[] = {FillTag::empty(), FillTag::partial(1), FillTag::full()};
  for (int i = 0; i < 3; ++i) {
    samples[static_cast<std::size_t>(i)].id = {i == 2 ? "other" : "shop", i, tags[i]};
    for (int b = 0; b < boxes[i]; ++b) {
      Annotation a;
      a.box = {0, b, 5, 1};
      a.cls = AnnotationClass::of(b % 2 ? FineLabel::input_field : FineLabel::product_image);
      a.source_key = "K" + std::to_string(b);
      samples[static_cast<std::size_t>(i)].annotations.push_back(a);
    }
  }
  const auto r = stats(samples, {{"shop", "acme"}}, {{"shop", "cart"}});
  CHECK(r.images == 3);
  CHECK(r.boxes == 62);
  CHECK(r.boxes_per_image.median == 19.0);
  CHECK(r.per_class.at("input_field") + r.per_class.at("product_image") == 62);
  CHECK(r.per_element_kind.at("input") == r.per_class.at("input_field"));
  CHECK(r.per_fill_group.at("partial") == 1);
  CHECK(r.per_brand.at("acme") == 2);
  CHECK(r.per_brand.at("unknown") == 1);
  CHECK(r.per_page_type.at("unknown") == 1);
  const auto j = stats_to_json(r);
  CHECK(j.dump().find("percent") != std::string::npos);
}
