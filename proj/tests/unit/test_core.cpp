#include <doctest.h>

#include <set>

#include "screenforge/core/model.hpp"
#include "screenforge/core/record.hpp"
#include "screenforge/error.hpp"
#include "screenforge/util/money.hpp"
#include "screenforge/util/rng.hpp"
#include "support/oracles.hpp"

using namespace screenforge;

namespace {

Annotation text_ann(BBox b, FineLabel l, std::string key, int line = 0) {
  Annotation a;
  a.box = b;
  a.cls = AnnotationClass::of(l);
  a.source_key = std::move(key);
  a.line_index = line;
  return a;
}

AnnotatedSample sample_with(std::vector<Annotation> anns) {
  AnnotatedSample s;
  s.id = {"shop_cart", 2, FillTag::partial(3)};
  s.image_ref = "samples/shop_cart/2/partial_3/image.png";
  s.config_seed = 1234567890123ULL;
  s.image_dims = {800, 600};
  s.annotations = std::move(anns);
  return s;
}

std::set<std::string> invariants(const AnnotatedSample& s) {
  std::set<std::string> out;
  for (const auto& v : validate_sample(s)) out.insert(v.invariant);
  return out;
}

}  // namespace

TEST_CASE("class derivation is fixed by the fine label") {
  CHECK(family_of(FineLabel::payment) == Family::pii);
  CHECK(family_of(FineLabel::input_field) == Family::pii);
  CHECK(family_of(FineLabel::product_image) == Family::product);
  CHECK(family_of(FineLabel::order_info) == Family::order);
  CHECK(element_kind_of(FineLabel::product_image) == ElementKind::image);
  CHECK(element_kind_of(FineLabel::input_field) == ElementKind::input);
  CHECK(element_kind_of(FineLabel::address) == ElementKind::text);
  for (FineLabel l : kAllFineLabels) {
    CHECK(AnnotationClass::of(l).consistent());
    CHECK(parse_fine_label(to_string(l)) == l);
  }
  AnnotationClass bad = AnnotationClass::of(FineLabel::name);
  bad.element_kind = ElementKind::image;
  CHECK_FALSE(bad.consistent());
}

TEST_CASE("fill tags and sample ids round-trip through text") {
  CHECK(FillTag::empty().str() == "empty");
  CHECK(FillTag::partial(4).str() == "partial_4");
  CHECK(FillTag::full().str() == "full");
  CHECK(FillTag::partial(4).group() == "partial");
  CHECK(FillTag::parse("partial_12") == FillTag::partial(12));
  CHECK_FALSE(FillTag::parse("partial_0"));
  CHECK_FALSE(FillTag::parse("partial_x"));
  CHECK_FALSE(FillTag::parse("half"));

  const SampleId id{"acme_checkout", 3, FillTag::partial(2)};
  CHECK(id.str() == "acme_checkout__v3__partial_2");
  CHECK(SampleId::parse(id.str()) == id);
  CHECK_FALSE(SampleId::parse("acme_checkout__3__full"));
}

TEST_CASE("validate_sample accepts a clean record") {
  auto s = sample_with({text_ann({10, 10, 50, 20}, FineLabel::name, "PII_FULLNAME"),
                        text_ann({10, 40, 50, 20}, FineLabel::address, "PII_STREET", 0),
                        text_ann({10, 60, 30, 20}, FineLabel::address, "PII_STREET", 1)});
  Annotation input;
  input.box = {100, 100, 300, 24};
  input.cls = AnnotationClass::of(FineLabel::input_field);
  s.annotations.push_back(input);
  s.annotations.push_back(input);  // two inputs: no key, no uniqueness constraint
  CHECK(validate_sample(s).empty());
}

TEST_CASE("validate_sample names each broken invariant") {
  CHECK(invariants(sample_with({text_ann({-1, 0, 5, 5}, FineLabel::name, "K")})).count("bbox_nonnegative_nondegenerate"));
  CHECK(invariants(sample_with({text_ann({0, 0, 0, 5}, FineLabel::name, "K")})).count("bbox_nonnegative_nondegenerate"));
  CHECK(invariants(sample_with({text_ann({790, 0, 11, 5}, FineLabel::name, "K")})).count("bbox_within_image"));
  CHECK(invariants(sample_with({text_ann({0, 0, 800, 600}, FineLabel::name, "K")})).empty());
  CHECK(invariants(sample_with({text_ann({0, 0, 5, 5}, FineLabel::name, "")})).count("source_key_present"));
  CHECK(invariants(sample_with({text_ann({0, 0, 5, 5}, FineLabel::name, "K"), text_ann({0, 9, 5, 5}, FineLabel::name, "K")}))
            .count("unique_key_line"));
  auto img = text_ann({0, 0, 5, 5}, FineLabel::product_image, "PRODUCT1_IMAGE", 1);
  CHECK(invariants(sample_with({img})).count("line_index_text_only"));
  auto inconsistent = text_ann({0, 0, 5, 5}, FineLabel::name, "K");
  inconsistent.cls.kind = Family::order;
  CHECK(invariants(sample_with({inconsistent})).count("class_consistency"));
  auto s = sample_with({});
  s.image_dims = {0, 10};
  CHECK(invariants(s).count("image_dims_positive"));
}

TEST_CASE("records serialize losslessly") {
  auto s = sample_with({text_ann({10, 10, 50, 20}, FineLabel::name, "PII_FULLNAME"),
                        text_ann({10, 30, 7, 20}, FineLabel::order_info, "ORDER_TOTAL", 2)});
  s.annotations[1].visibility = Visibility::clipped;
  const std::string text = serialize_record(s);
  CHECK(parse_record(text) == s);
  CHECK(serialize_record(parse_record(text)) == text);
  CHECK_THROWS_AS(parse_record("{\"schema\": 99}"), Error);
  CHECK_THROWS_AS(parse_record("not json"), Error);
}

TEST_CASE("cents parse and print exactly") {
  CHECK(Cents::parse("12").value() == 1200);
  CHECK(Cents::parse("12.3").value() == 1230);
  CHECK(Cents::parse("0.05").value() == 5);
  CHECK(Cents::parse("-0.05").str() == "-0.05");
  CHECK(Cents(449).str() == "4.49");
  CHECK_THROWS(Cents::parse("1.234"));
  CHECK_THROWS(Cents::parse("abc"));
}

TEST_CASE("half-even rate application matches the integer oracle") {
  // Hand cases around the tie.
  CHECK(apply_rate_half_even(Cents(1000), DecimalRate::parse("0.0825")).value() == 82);  // 82.5 -> 82
  CHECK(apply_rate_half_even(Cents(1400), DecimalRate::parse("0.0825")).value() == 116);  // 115.5 -> 116
  CHECK(apply_rate_half_even(Cents(2547), DecimalRate::parse("0.0825")).value() == 210);
  Rng rng(99);
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t amount = rng.between(0, 5'000'000);
    const std::int64_t num = rng.between(0, 2000);
    const int scale = static_cast<int>(rng.between(0, 5));
    std::string text = std::to_string(num);
    while (static_cast<int>(text.size()) <= scale) text = "0" + text;
    if (scale > 0) text.insert(text.size() - scale, ".");
    const auto [n, d] = oracle::rate(text);
    CHECK(apply_rate_half_even(Cents(amount), DecimalRate::parse(text)).value() == oracle::rate_half_even(amount, n, d));
  }
}

TEST_CASE("stable_hash and Rng are reproducible") {
  CHECK(stable_hash({"a", "b"}) == stable_hash({"a", "b"}));
  CHECK(stable_hash({"ab"}) != stable_hash({"a", "b"}));
  CHECK(stable_hash(1, {"x"}) != stable_hash(2, {"x"}));
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.between(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    const double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
