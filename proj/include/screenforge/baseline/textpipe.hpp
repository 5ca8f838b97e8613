#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "screenforge/core/model.hpp"
#include "screenforge/eval/evalkit.hpp"

namespace screenforge::baseline {

struct OcrWord {
  std::string sample_id;
  std::string text;
  BBox box;
  double confidence = 1.0;
};

// Newline-delimited {sample_id, text, x, y, w, h, confidence}. Throws
// ParseError with the line number; empty text is rejected.
std::vector<OcrWord> parse_ocr(std::string_view text);

// `external` marks spans flagged by the classifier hook; it is not a rule.
enum class Rule { email, phone, card_luhn, zip, date, money, name_gazetteer, external };

std::string_view to_string(Rule r);
std::optional<Rule> parse_rule(std::string_view s);

struct RuleSet {
  std::set<Rule> enabled;
  std::set<std::string> given_names;  // lowercase
  std::set<std::string> surnames;     // lowercase

  // All seven rules, gazetteer from the bundled name lists.
  static RuleSet defaults();
  // Comma-separated rule names over the default gazetteer.
  static RuleSet parse(std::string_view csv);
};

inline constexpr std::size_t kMaxWindow = 6;

// Inclusive word-index range flagged by one rule.
struct FlaggedSpan {
  Rule rule;
  std::size_t first = 0;
  std::size_t last = 0;

  bool operator==(const FlaggedSpan&) const = default;
};

// Digits only, mod-10 checksum.
bool luhn_valid(std::string_view digits);

// Whole-string matchers; total over arbitrary input.
bool match_email(std::string_view s);
bool match_phone(std::string_view s);
bool match_card(std::string_view s);
bool match_zip(std::string_view s);  // also "City, ST 12345"
bool match_date(std::string_view s);
bool match_money(std::string_view s);

// Words must already be in reading order. Every window of up to six words is
// tested against each enabled rule; overlapping hits of one rule merge. Result
// sorted by (first, last, rule).
std::vector<FlaggedSpan> classify_spans(std::span<const OcrWord> words, const RuleSet& rules);

// One detection per rendered line of the span: the union of its words on that
// line, confidence the minimum word confidence. A new line starts when a word
// does not overlap the previous one vertically by half the smaller height or
// sits left of it.
std::vector<eval::Detection> merge_spans_to_boxes(const FlaggedSpan& span, std::span<const OcrWord> words,
                                                  std::string_view cls = "text");

// Sorts one sample's words into reading order: lines by vertical overlap, then
// x within a line.
std::vector<OcrWord> reading_order(std::vector<OcrWord> words);

// Runs the external classifier: the command receives
// {"sample_id", "words": [text...]} on stdin and prints {"pii_items": [{"text"}]}.
// Each flagged text maps to every run of consecutive words spelling it.
// Throws RunnerFailed on a non-zero exit and ParseError on bad output.
std::vector<FlaggedSpan> classify_external(const std::string& command, std::span<const OcrWord> words);

struct BaselineOptions {
  RuleSet rules = RuleSet::defaults();
  std::string external_command;  // replaces the rules when set
};

// Classifies and merges per sample, samples in id order. Deterministic.
std::vector<eval::Detection> run_baseline(std::span<const OcrWord> words, const BaselineOptions& options = {});

// OCR file in, evalkit detections NDJSON out.
std::string run_baseline_file(const std::filesystem::path& ocr_file, const BaselineOptions& options = {});

}  // namespace screenforge::baseline
