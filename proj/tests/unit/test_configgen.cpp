#include <doctest.h>

#include <regex>
#include <set>

#include "screenforge/catalog/catalog.hpp"
#include "screenforge/configgen/config.hpp"
#include "screenforge/error.hpp"
#include "support/builders.hpp"
#include "support/common.hpp"
#include "support/oracles.hpp"

using namespace screenforge;
using namespace screenforge::configgen;

using testing::cart_spec;
using testing::fixture_catalog;
using testing::registry_408;


TEST_CASE("derived totals are exact against the integer-cents oracle") {
  Rng rng(2024);
  for (int cart = 0; cart < 1000; ++cart) {
    const int items = static_cast<int>(rng.between(1, 4));
    const std::string shipping = oracle::cents_str(rng.between(0, 2500));
    const std::string rate = "0." + std::to_string(rng.between(0, 1500) + 10000).substr(1);
    const auto spec = cart_spec(items, shipping, rate);
    const DataConfig c = generate_config(spec, fixture_catalog(), 42, "cart" + std::to_string(cart), 0);

    std::int64_t sub = 0;
    for (int i = 1; i <= items; ++i) {
      const std::string p = "PRODUCT" + std::to_string(i);
      sub += oracle::cents(c.at(p + "_PRICE")) * std::atoll(c.at(p + "_QTY").c_str());
    }
    const auto [num, den] = oracle::rate(rate);
    const std::int64_t tax = oracle::rate_half_even(sub, num, den);
    const std::int64_t ship = oracle::cents(shipping);
    CHECK(c.at("ORDER_SUBTOTAL") == oracle::cents_str(sub));
    CHECK(c.at("ORDER_TAX") == oracle::cents_str(tax));
    CHECK(c.at("ORDER_TOTAL") == oracle::cents_str(sub + ship + tax));
    CHECK(oracle::cents(c.at("ORDER_TOTAL")) - oracle::cents(c.at("ORDER_SUBTOTAL")) - oracle::cents(c.at("SHIPPING_COST")) -
              oracle::cents(c.at("ORDER_TAX")) ==
          0);
  }
}

TEST_CASE("derive_values is idempotent and rejects negatives") {
  LayoutDataSpec spec;
  spec.extracted_constants = {{"SHIPPING_COST", "5.99"}, {"TAX_RATE", "0.0825"}};
  std::map<std::string, ConfigValue> v;
  v["PRODUCT1_PRICE"] = {ValueType::currency, "8.49", Provenance::catalog};
  v["PRODUCT1_QTY"] = {ValueType::string, "3", Provenance::randomized};
  auto once = derive_values(v, spec);
  CHECK(once.at("ORDER_SUBTOTAL").value == "25.47");
  CHECK(once.at("ORDER_TAX").value == "2.10");
  CHECK(once.at("ORDER_TOTAL").value == "33.56");
  CHECK(derive_values(once, spec) == once);
  v["PRODUCT1_PRICE"].value = "-1.00";
  CHECK_THROWS_AS(derive_values(v, spec), Error);
}

TEST_CASE("generation is a pure function of seed, layout and variant") {
  const auto spec = cart_spec(2, "4.00", "0.05");
  const DataConfig a = generate_config(spec, fixture_catalog(), 42, "shop", 1);
  const DataConfig b = generate_config(spec, fixture_catalog(), 42, "shop", 1);
  CHECK(a == b);
  CHECK(config_from_json(config_to_json(a)) == a);
  CHECK(a.seed == config_seed(42, "shop", 1));
  const DataConfig c = generate_config(spec, fixture_catalog(), 42, "shop", 2);
  CHECK(c.seed != a.seed);
  CHECK(c.values != a.values);
  for (const auto& k : spec.required_keys) CHECK(a.values.count(k));
}

TEST_CASE("train and test partitions never share identifying values") {
  LayoutDataSpec spec;
  spec.required_keys = {"PII_FULLNAME", "PII_STREET", "PII_CITY", "PII_EMAIL", "PII_PHONE", "PII_USERNAME",
                        "PII_DELIVERY_INSTRUCTIONS", "PII_GIFT_MESSAGE", "PRODUCT1_NAME", "PRODUCT1_IMAGE"};
  std::map<std::string, std::set<std::string>> seen[2];
  for (int part = 0; part < 2; ++part) {
    GenerateOptions o;
    o.partition = part == 0 ? PoolPartition::train : PoolPartition::test;
    for (int v = 0; v < 150; ++v) {
      const DataConfig c = generate_config(spec, fixture_catalog(), 42, "layout" + std::to_string(v % 7), v, o);
      for (const auto& [k, val] : c.values)
        if (is_identifying_key(k)) seen[part][k].insert(val.value);
    }
  }
  for (const auto& [k, train_values] : seen[0]) {
    for (const auto& v : train_values) {
      INFO(k << " = " << v);
      CHECK_FALSE(seen[1][k].count(v));
    }
  }
}

TEST_CASE("identifier formats follow their patterns") {
  CHECK(format_id(IdFormatTemplate::of("###-@@"), 1).size() == 6);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::string id = format_id(IdFormatTemplate::of("1Z***\\#-##"), s);
    CHECK(std::regex_match(id, std::regex("1Z[A-Z0-9]{3}#-[0-9]{2}")));
  }
  IdFormatTemplate t = IdFormatTemplate::of("@@@@");
  t.charsets['@'] = "xy";
  CHECK(std::regex_match(format_id(t, 5), std::regex("[xy]{4}")));
  CHECK(format_id(IdFormatTemplate::of("####"), 9) == format_id(IdFormatTemplate::of("####"), 9));
}

TEST_CASE("field value shapes") {
  LayoutDataSpec spec;
  spec.required_keys = {"PII_EMAIL", "PII_PHONE", "PII_CARD_NUMBER", "PII_CARD_LAST4", "PII_ZIP", "ORDER_ID", "ORDER_DATE"};
  for (int v = 0; v < 50; ++v) {
    const DataConfig c = generate_config(spec, fixture_catalog(), 7, "shapes", v);
    CHECK(std::regex_match(c.at("PII_EMAIL"), std::regex(R"([a-z]+\.[a-z]+[0-9]+@[a-z.]+)")));
    CHECK(std::regex_match(c.at("PII_ZIP"), std::regex("[0-9]{5}")));
    std::string digits;
    for (char ch : c.at("PII_CARD_NUMBER"))
      if (std::isdigit(static_cast<unsigned char>(ch))) digits += ch;
    CHECK(oracle::luhn(digits));
    CHECK(c.at("PII_CARD_LAST4") == digits.substr(digits.size() - 4));
    CHECK(std::regex_match(c.at("ORDER_ID"), std::regex("[0-9]{3}-[0-9]{7}-[0-9]{7}")));
  }
}

TEST_CASE("keys without a generator are rejected") {
  LayoutDataSpec spec;
  spec.required_keys = {"PII_FAVOURITE_COLOUR"};
  CHECK_THROWS_AS(generate_config(spec, fixture_catalog(), 1, "x", 0), Error);
  CHECK_FALSE(has_generator("NOPE", spec));
  spec.extracted_constants["NOPE"] = "1";
  CHECK(has_generator("NOPE", spec));
}

TEST_CASE("optional groups follow their probabilities") {
  LayoutDataSpec spec;
  spec.required_keys = {"PII_FULLNAME"};
  spec.optional_fields = {{"always", 1.0}, {"half", 0.5}, {"never", 0.0}};
  spec.optional_keys["half"] = {"PII_GIFT_MESSAGE"};
  int half = 0;
  for (int v = 0; v < 400; ++v) {
    const DataConfig c = generate_config(spec, fixture_catalog(), 3, "opt", v);
    CHECK(c.included_optional_fields.count("always"));
    CHECK_FALSE(c.included_optional_fields.count("never"));
    if (c.included_optional_fields.count("half")) {
      ++half;
      CHECK(c.values.count("PII_GIFT_MESSAGE"));
    }
  }
  CHECK(half > 140);
  CHECK(half < 260);
}

TEST_CASE("data spec constraints") {
  LayoutDataSpec spec;
  spec.extracted_constants = {{"SHIPPING_COST", "-1.00"}};
  CHECK_FALSE(check_data_spec(spec).empty());
  spec.extracted_constants = {{"SHIPPING_COST", "1.00"}, {"TAX_RATE", "0.07"}};
  CHECK(check_data_spec(spec).empty());
  spec.optional_fields = {{"g", 1.5}};
  CHECK_FALSE(check_data_spec(spec).empty());
  CHECK(data_spec_from_json(data_spec_to_json(spec)).extracted_constants == spec.extracted_constants);
}
