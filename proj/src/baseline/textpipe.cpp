#include "screenforge/baseline/textpipe.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <regex>
#include <unistd.h>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "screenforge/configgen/pools.hpp"
#include "screenforge/error.hpp"
#include "screenforge/util/fs.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::baseline {

using nlohmann::json;

namespace {

constexpr std::string_view kRuleNames[] = {"email", "phone", "card_luhn", "zip", "date", "money", "name_gazetteer", "external"};

// Trailing sentence punctuation never belongs to a value.
std::string_view strip_trailing(std::string_view s) {
  while (!s.empty() && (s.back() == ',' || s.back() == ';' || s.back() == ':' || s.back() == '.')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool full_match(const std::regex& re, std::string_view s) {
  return std::regex_match(s.begin(), s.end(), re);
}

bool gazetteer_hit(const RuleSet& rules, std::string_view word) {
  word = strip_trailing(word);
  if (word.size() < 2 || !std::isupper(static_cast<unsigned char>(word.front()))) return false;
  const std::string w = lower(word);
  return rules.given_names.count(w) || rules.surnames.count(w);
}

bool window_matches(Rule rule, std::string_view text) {
  switch (rule) {
    case Rule::email: return match_email(text);
    case Rule::phone: return match_phone(text);
    case Rule::card_luhn: return match_card(text);
    case Rule::zip: return match_zip(text);
    case Rule::date: return match_date(text);
    case Rule::money: return match_money(text);
    case Rule::name_gazetteer:
    case Rule::external: return false;
  }
  return false;
}

bool same_line(const BBox& prev, const BBox& next) {
  const int overlap = std::min(prev.bottom(), next.bottom()) - std::max(prev.y, next.y);
  return 2 * overlap >= std::min(prev.h, next.h) && next.x >= prev.x;
}

BBox unite(const BBox& a, const BBox& b) {
  const int x0 = std::min(a.x, b.x);
  const int y0 = std::min(a.y, b.y);
  const int x1 = std::max(a.right(), b.right());
  const int y1 = std::max(a.bottom(), b.bottom());
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace

std::vector<OcrWord> parse_ocr(std::string_view text) {
  std::vector<OcrWord> out;
  int line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      OcrWord w;
      w.sample_id = j.at("sample_id").get<std::string>();
      w.text = j.at("text").get<std::string>();
      w.box = {j.at("x").get<int>(), j.at("y").get<int>(), j.at("w").get<int>(), j.at("h").get<int>()};
      w.confidence = j.value("confidence", 1.0);
      if (trim(w.text).empty()) throw ParseError("empty OCR word", line_no, 1);
      out.push_back(std::move(w));
    } catch (const json::exception& e) {
      throw ParseError(std::string("OCR record: ") + e.what(), line_no, 1);
    }
  }
  return out;
}

std::string_view to_string(Rule r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<Rule> parse_rule(std::string_view s) {
  for (int i = 0; i < 8; ++i)
    if (kRuleNames[i] == s) return static_cast<Rule>(i);
  return std::nullopt;
}

RuleSet RuleSet::defaults() {
  RuleSet r;
  for (int i = 0; i < 7; ++i) r.enabled.insert(static_cast<Rule>(i));
  for (auto n : configgen::pools::first_names()) r.given_names.insert(lower(n));
  for (auto n : configgen::pools::last_names()) r.surnames.insert(lower(n));
  return r;
}

RuleSet RuleSet::parse(std::string_view csv) {
  RuleSet r = defaults();
  r.enabled.clear();
  for (const auto& name : split(csv, ',')) {
    const auto t = trim(name);
    if (t.empty()) continue;
    auto rule = parse_rule(t);
    if (!rule || *rule == Rule::external) throw Error(Errc::invalid_argument, "unknown rule '" + std::string(t) + "'");
    r.enabled.insert(*rule);
  }
  return r;
}

bool luhn_valid(std::string_view digits) {
  if (digits.empty()) return false;
  int sum = 0;
  bool twice = false;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < '0' || *it > '9') return false;
    int d = *it - '0';
    if (twice) {
      d *= 2;
      if (d > 9) d -= 9;
    }
    sum += d;
    twice = !twice;
  }
  return sum % 10 == 0;
}

bool match_email(std::string_view s) {
  static const std::regex re(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,})");
  s = strip_trailing(s);
  if (!s.empty() && (s.front() == '<' || s.front() == '(')) s.remove_prefix(1);
  if (!s.empty() && (s.back() == '>' || s.back() == ')')) s.remove_suffix(1);
  return full_match(re, s);
}

bool match_phone(std::string_view s) {
  static const std::regex re(R"((\+?1[ .-]?)?(\(\d{3}\)|\d{3})[ .-]?\d{3}[ .-]?\d{4})");
  return full_match(re, strip_trailing(s));
}

bool match_card(std::string_view s) {
  s = strip_trailing(s);
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s.front())) ||
      !std::isdigit(static_cast<unsigned char>(s.back())))
    return false;
  std::string digits;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else if (c != ' ' && c != '-') {
      return false;
    }
  }
  return digits.size() >= 13 && digits.size() <= 19 && luhn_valid(digits);
}

bool match_zip(std::string_view s) {
  // A bare ZIP, or the "City, ST 12345" line it usually ends.
  static const std::regex re(R"(([A-Z][A-Za-z.'-]*( [A-Z][A-Za-z.'-]*)*, [A-Z]{2} )?\d{5}(-\d{4})?)");
  return full_match(re, strip_trailing(s));
}

bool match_date(std::string_view s) {
  static const std::regex month(
      R"((jan|feb|mar|apr|may|jun|jul|aug|sep|sept|oct|nov|dec|january|february|march|april|june|july|august|september|october|november|december)\.? \d{1,2},? \d{4})",
      std::regex::icase);
  static const std::regex numeric(R"(\d{1,2}/\d{1,2}/(\d{2}|\d{4})|\d{4}-\d{2}-\d{2})");
  s = strip_trailing(s);
  return full_match(month, s) || full_match(numeric, s);
}

bool match_money(std::string_view s) {
  static const std::regex re(R"([$€£] ?(\d{1,3}(,\d{3})+|\d+)(\.\d{2})?)");
  return full_match(re, strip_trailing(s));
}

std::vector<FlaggedSpan> classify_spans(std::span<const OcrWord> words, const RuleSet& rules) {
  std::map<Rule, std::vector<FlaggedSpan>> hits;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string text;
    for (std::size_t j = i; j < words.size() && j < i + kMaxWindow; ++j) {
      if (j > i) text.push_back(' ');
      text += words[j].text;
      for (Rule rule : rules.enabled) {
        if (rule == Rule::name_gazetteer) continue;
        if (window_matches(rule, text)) hits[rule].push_back({rule, i, j});
      }
    }
    if (rules.enabled.count(Rule::name_gazetteer) && i + 1 < words.size() && gazetteer_hit(rules, words[i].text) &&
        gazetteer_hit(rules, words[i + 1].text)) {
      hits[Rule::name_gazetteer].push_back({Rule::name_gazetteer, i, i + 1});
    }
  }
  std::vector<FlaggedSpan> out;
  for (auto& [rule, list] : hits) {
    std::sort(list.begin(), list.end(), [](const FlaggedSpan& a, const FlaggedSpan& b) {
      return a.first != b.first ? a.first < b.first : a.last < b.last;
    });
    FlaggedSpan cur = list.front();
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (list[k].first <= cur.last) {
        cur.last = std::max(cur.last, list[k].last);
      } else {
        out.push_back(cur);
        cur = list[k];
      }
    }
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end(), [](const FlaggedSpan& a, const FlaggedSpan& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.last != b.last) return a.last < b.last;
    return a.rule < b.rule;
  });
  return out;
}

std::vector<eval::Detection> merge_spans_to_boxes(const FlaggedSpan& span, std::span<const OcrWord> words,
                                                  std::string_view cls) {
  std::vector<eval::Detection> out;
  if (span.first > span.last || span.last >= words.size()) return out;
  eval::Detection cur{words[span.first].sample_id, words[span.first].box, std::string(cls), words[span.first].confidence};
  for (std::size_t i = span.first + 1; i <= span.last; ++i) {
    const OcrWord& w = words[i];
    if (same_line(words[i - 1].box, w.box)) {
      cur.box = unite(cur.box, w.box);
      cur.confidence = std::min(cur.confidence, w.confidence);
    } else {
      out.push_back(cur);
      cur = {w.sample_id, w.box, std::string(cls), w.confidence};
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<OcrWord> reading_order(std::vector<OcrWord> words) {
  std::stable_sort(words.begin(), words.end(), [](const OcrWord& a, const OcrWord& b) {
    return a.box.y != b.box.y ? a.box.y < b.box.y : a.box.x < b.box.x;
  });
  // Greedy line grouping against the first word of each line.
  std::vector<std::vector<OcrWord>> lines;
  for (auto& w : words) {
    bool placed = false;
    if (!lines.empty()) {
      const BBox& head = lines.back().front().box;
      const int overlap = std::min(head.bottom(), w.box.bottom()) - std::max(head.y, w.box.y);
      if (2 * overlap >= std::min(head.h, w.box.h)) {
        lines.back().push_back(std::move(w));
        placed = true;
      }
    }
    if (!placed) lines.push_back({std::move(w)});
  }
  std::vector<OcrWord> out;
  for (auto& line : lines) {
    std::stable_sort(line.begin(), line.end(), [](const OcrWord& a, const OcrWord& b) { return a.box.x < b.box.x; });
    for (auto& w : line) out.push_back(std::move(w));
  }
  return out;
}

std::vector<FlaggedSpan> classify_external(const std::string& command, std::span<const OcrWord> words) {
  json input{{"sample_id", words.empty() ? std::string() : words.front().sample_id}, {"words", json::array()}};
  for (const auto& w : words) input["words"].push_back(w.text);

  char path[] = "/tmp/screenforge-words-XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) throw Error(Errc::io_error, "cannot create classifier input file");
  close(fd);
  write_file_atomic(path, input.dump());
  std::string output;
  int status = -1;
  const std::string line = "{ " + command + "\n} < '" + path + "'";
  if (FILE* pipe = popen(line.c_str(), "r")) {
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    status = pclose(pipe);
  }
  std::remove(path);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw Error(Errc::runner_failed, "classifier command failed: " + command);

  std::set<std::string> flagged;
  try {
    const json j = json::parse(output);
    for (const auto& item : j.at("pii_items")) flagged.insert(normalize_for_match(item.at("text").get<std::string>()));
  } catch (const json::exception& e) {
    throw ParseError(std::string("classifier output: ") + e.what());
  }
  std::vector<FlaggedSpan> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string text;
    for (std::size_t j = i; j < words.size(); ++j) {
      if (j > i) text.push_back(' ');
      text += words[j].text;
      const std::string norm = normalize_for_match(text);
      if (flagged.count(norm)) out.push_back({Rule::external, i, j});
      if (norm.size() > 512) break;
    }
  }
  return out;
}

std::vector<eval::Detection> run_baseline(std::span<const OcrWord> words, const BaselineOptions& options) {
  std::map<std::string, std::vector<OcrWord>> by_sample;
  for (const auto& w : words) by_sample[w.sample_id].push_back(w);
  std::vector<eval::Detection> out;
  for (auto& [id, list] : by_sample) {
    const auto ordered = reading_order(std::move(list));
    const auto spans = options.external_command.empty() ? classify_spans(ordered, options.rules)
                                                        : classify_external(options.external_command, ordered);
    for (const auto& span : spans)
      for (auto& d : merge_spans_to_boxes(span, ordered)) out.push_back(std::move(d));
  }
  return out;
}

std::string run_baseline_file(const std::filesystem::path& ocr_file, const BaselineOptions& options) {
  const auto words = parse_ocr(read_file(ocr_file));
  return eval::detections_to_ndjson(run_baseline(words, options));
}

}  // namespace screenforge::baseline
