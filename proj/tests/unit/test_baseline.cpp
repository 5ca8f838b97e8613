#include <doctest.h>

#include <set>

#include "screenforge/baseline/textpipe.hpp"
#include "screenforge/error.hpp"
#include "screenforge/util/rng.hpp"
#include "support/common.hpp"
#include "support/oracles.hpp"

using namespace screenforge;
using namespace screenforge::baseline;

namespace {

std::vector<OcrWord> line(const std::string& sample, std::initializer_list<std::string> texts, int y = 10) {
  std::vector<OcrWord> out;
  int x = 10;
  for (const auto& t : texts) {
    out.push_back({sample, t, {x, y, static_cast<int>(t.size()) * 8, 16}, 0.9});
    x += static_cast<int>(t.size()) * 8 + 6;
  }
  return out;
}

std::set<Rule> rules_hit(const std::vector<OcrWord>& words) {
  std::set<Rule> out;
  for (const auto& s : classify_spans(words, RuleSet::defaults())) out.insert(s.rule);
  return out;
}

}  // namespace

TEST_CASE("luhn agrees with the textbook oracle") {
  CHECK(luhn_valid("4111111111111111"));
  CHECK_FALSE(luhn_valid("4111111111111112"));
  CHECK(luhn_valid("79927398713"));
  Rng rng(6);
  for (int i = 0; i < 5000; ++i) {
    std::string d;
    const int len = static_cast<int>(rng.between(1, 19));
    for (int k = 0; k < len; ++k) d.push_back(static_cast<char>('0' + rng.below(10)));
    CHECK(luhn_valid(d) == oracle::luhn(d));
  }
}

TEST_CASE("pattern matchers") {
  CHECK(match_email("jane.doe@example.com"));
  CHECK(match_email("<jane@example.org>,"));
  CHECK_FALSE(match_email("jane@"));
  CHECK_FALSE(match_email("Price:"));
  CHECK(match_phone("(415) 555-0134"));
  CHECK(match_phone("415-555-0134"));
  CHECK(match_phone("+1 415 555 0134"));
  CHECK_FALSE(match_phone("12345"));
  CHECK(match_card("4111 1111 1111 1111"));
  CHECK(match_card("4111-1111-1111-1111"));
  CHECK_FALSE(match_card("4111 1111 1111 1112"));
  CHECK_FALSE(match_card("4111 1111 11"));
  CHECK(match_zip("94107"));
  CHECK(match_zip("Springfield, IL 62704"));
  CHECK_FALSE(match_zip("9410"));
  CHECK(match_date("March 3, 2024"));
  CHECK(match_date("03/14/2024"));
  CHECK(match_money("$1,234.50"));
  CHECK_FALSE(match_money("Price:"));
}

TEST_CASE("spans: PII is flagged, interface labels are not") {
  auto words = line("s", {"Contact", "jane.doe@example.com"});
  CHECK(rules_hit(words) == std::set<Rule>{Rule::email});
  CHECK(rules_hit(line("s", {"Call", "(415)", "555-0134"})) == std::set<Rule>{Rule::phone});
  CHECK(rules_hit(line("s", {"Card", "4111", "1111", "1111", "1111"})) == std::set<Rule>{Rule::card_luhn});
  CHECK(rules_hit(line("s", {"Add", "to", "cart"})).empty());
  CHECK(rules_hit(line("s", {"Price:"})).empty());
  CHECK(rules_hit(line("s", {"Subtotal", "Quantity", "Checkout", "Ship", "to"})).empty());
  // Two consecutive gazetteer hits make a name.
  CHECK(rules_hit(line("s", {"Ship", "to", "Marc", "Arnold"})).count(Rule::name_gazetteer));
  const auto spans = classify_spans(line("s", {"Card", "4111", "1111", "1111", "1111"}), RuleSet::defaults());
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].first == 1);
  CHECK(spans[0].last == 4);
}

TEST_CASE("span merging produces one box per line") {
  std::vector<OcrWord> words = line("s", {"Leave", "4111", "1111"}, 10);
  const auto second = line("s", {"1111", "1111"}, 40);
  words.insert(words.end(), second.begin(), second.end());
  words[2].confidence = 0.4;
  const auto dets = merge_spans_to_boxes({Rule::card_luhn, 1, 4}, words);
  REQUIRE(dets.size() == 2);
  CHECK(dets[0].box.x == words[1].box.x);
  CHECK(dets[0].box.right() == words[2].box.right());
  CHECK(dets[0].confidence == 0.4);
  CHECK(dets[1].box.y == 40);
  CHECK(dets[1].cls == "text");
}

TEST_CASE("reading order sorts lines then x") {
  std::vector<OcrWord> w = {{"s", "b", {50, 12, 10, 16}, 1}, {"s", "c", {5, 40, 10, 16}, 1}, {"s", "a", {5, 10, 10, 16}, 1}};
  const auto o = reading_order(w);
  CHECK(o[0].text == "a");
  CHECK(o[1].text == "b");
  CHECK(o[2].text == "c");
}

TEST_CASE("fixture OCR run") {
  const auto dets_text = run_baseline_file(testing::fixtures() / "ocr" / "words.ndjson");
  const auto words = parse_ocr(testing::slurp(testing::fixtures() / "ocr" / "words.ndjson"));
  CHECK(words.size() == 26);
  const auto dets = run_baseline(words);
  // s1: email, phone, card. s2: nothing (card fails Luhn; "Add to cart" is a label).
  REQUIRE(dets.size() == 3);
  for (const auto& d : dets) CHECK(d.sample_id == "s1");
  CHECK(dets[0].box.y == 10);
  CHECK(dets[1].box.y == 40);
  CHECK(dets[2].box.y == 70);
  CHECK(dets[2].box.x == 60);
  CHECK(dets[2].box.right() == 235);
  CHECK(run_baseline_file(testing::fixtures() / "ocr" / "words.ndjson") == dets_text);
}

TEST_CASE("rule sets and parse errors") {
  CHECK(RuleSet::defaults().enabled.size() == 7);
  CHECK(RuleSet::parse("email,phone").enabled == std::set<Rule>{Rule::email, Rule::phone});
  CHECK_THROWS_AS(RuleSet::parse("email,magic"), Error);
  CHECK_THROWS_AS(RuleSet::parse("external"), Error);
  try {
    parse_ocr("{\"sample_id\":\"s\",\"text\":\"a\",\"x\":1,\"y\":1,\"w\":1,\"h\":1}\n{\"sample_id\":\"s\",\"text\":\" \",\"x\":1,\"y\":1,\"w\":1,\"h\":1}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("external classifier hook") {
  const auto words = line("s", {"Deliver", "to", "Ada", "Byron", "today"});
  BaselineOptions o;
  o.external_command = "printf '{\"pii_items\":[{\"text\":\"Ada Byron\"}]}'";
  const auto dets = run_baseline(words, o);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].box.x == words[2].box.x);
  CHECK(dets[0].box.right() == words[3].box.right());
  const auto spans = classify_external("cat >/dev/null; echo '{\"pii_items\":[]}'", words);
  CHECK(spans.empty());
  try {
    classify_external("exit 3", words);
    FAIL("expected RunnerFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::runner_failed);
  }
  CHECK_THROWS_AS(classify_external("echo nonsense", words), Error);
}
