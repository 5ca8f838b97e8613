#include <algorithm>
#include <set>
#include <system_error>

#include "screenforge/core/record.hpp"
#include "screenforge/error.hpp"
#include "screenforge/review/service.hpp"
#include "screenforge/util/fs.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::review {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kDecisionNames[] = {"pending", "approved", "flagged", "excluded", "render_failed"};

json entry_to_json(const LedgerEntry& e) {
  json j{{"seq", e.seq}, {"layout_id", e.layout_id}, {"decision", to_string(e.decision)}};
  if (!e.note.empty()) j["note"] = e.note;
  if (!e.idempotency_key.empty()) j["key"] = e.idempotency_key;
  if (e.requeue) j["requeue"] = true;
  return j;
}

LedgerEntry entry_from_json(const json& j) {
  LedgerEntry e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.layout_id = j.at("layout_id").get<std::string>();
  const auto d = parse_decision(j.at("decision").get<std::string>());
  if (!d) throw ParseError("unknown decision in ledger");
  e.decision = *d;
  e.note = j.value("note", std::string());
  e.idempotency_key = j.value("key", std::string());
  e.requeue = j.value("requeue", false);
  return e;
}

}  // namespace

std::string_view to_string(Decision d) { return kDecisionNames[static_cast<int>(d)]; }

std::optional<Decision> parse_decision(std::string_view s) {
  for (int i = 0; i < 5; ++i)
    if (kDecisionNames[i] == s) return static_cast<Decision>(i);
  return std::nullopt;
}

ReviewLedger::ReviewLedger(fs::path file, std::vector<std::string> layouts) : file_(std::move(file)) {
  for (auto& id : layouts) states_[id];
  std::error_code ec;
  if (!fs::exists(file_, ec)) return;
  std::string text = read_file(file_);
  // Drop a torn tail so the next append starts on a fresh line.
  const auto last_nl = text.rfind('\n');
  const std::size_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
  if (keep != text.size()) {
    text.resize(keep);
    fs::resize_file(file_, keep);
  }
  int line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    LedgerEntry e;
    try {
      e = entry_from_json(json::parse(line));
    } catch (const json::exception& ex) {
      throw ParseError(std::string("review ledger: ") + ex.what(), line_no, 1);
    }
    apply(e);
    if (!e.idempotency_key.empty()) keys_[e.idempotency_key] = {e.seq, true};
    next_seq_ = std::max(next_seq_, e.seq + 1);
  }
}

void ReviewLedger::apply(const LedgerEntry& e) {
  State& s = states_[e.layout_id];
  if (e.requeue) ++s.generation;
  s.history.push_back(e);
}

bool ReviewLedger::knows(std::string_view layout_id) const {
  std::lock_guard lock(mu_);
  return states_.count(std::string(layout_id)) > 0;
}

std::vector<std::string> ReviewLedger::layouts() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, s] : states_) out.push_back(id);
  return out;
}

Ack ReviewLedger::append(LedgerEntry entry) {
  std::lock_guard lock(mu_);
  if (!states_.count(entry.layout_id))
    throw Error(Errc::unknown_layout, "unknown layout '" + entry.layout_id + "'");
  if (!entry.idempotency_key.empty()) {
    auto it = keys_.find(entry.idempotency_key);
    if (it != keys_.end()) return {it->second.seq, true};
  }
  entry.seq = next_seq_;
  append_line_durable(file_, entry_to_json(entry).dump());
  ++next_seq_;
  apply(entry);
  if (!entry.idempotency_key.empty()) keys_[entry.idempotency_key] = {entry.seq, true};
  return {entry.seq, false};
}

Ack ReviewLedger::submit(std::string_view layout_id, Decision decision, std::string_view note,
                         std::string_view idempotency_key) {
  LedgerEntry e;
  e.layout_id = std::string(layout_id);
  e.decision = decision;
  e.note = std::string(note);
  e.idempotency_key = std::string(idempotency_key);
  return append(std::move(e));
}

Ack ReviewLedger::requeue(std::string_view layout_id, std::string_view note) {
  LedgerEntry e;
  e.layout_id = std::string(layout_id);
  e.decision = Decision::pending;
  e.note = std::string(note);
  e.requeue = true;
  return append(std::move(e));
}

Decision ReviewLedger::latest(std::string_view layout_id) const {
  std::lock_guard lock(mu_);
  auto it = states_.find(std::string(layout_id));
  if (it == states_.end()) throw Error(Errc::unknown_layout, "unknown layout '" + std::string(layout_id) + "'");
  return it->second.history.empty() ? Decision::pending : it->second.history.back().decision;
}

std::string ReviewLedger::latest_note(std::string_view layout_id) const {
  std::lock_guard lock(mu_);
  auto it = states_.find(std::string(layout_id));
  if (it == states_.end() || it->second.history.empty()) return {};
  return it->second.history.back().note;
}

std::vector<LedgerEntry> ReviewLedger::history(std::string_view layout_id) const {
  std::lock_guard lock(mu_);
  auto it = states_.find(std::string(layout_id));
  if (it == states_.end()) throw Error(Errc::unknown_layout, "unknown layout '" + std::string(layout_id) + "'");
  return it->second.history;
}

std::size_t ReviewLedger::history_size() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& [id, s] : states_) n += s.history.size();
  return n;
}

int ReviewLedger::iteration_count(std::string_view layout_id) const {
  std::lock_guard lock(mu_);
  auto it = states_.find(std::string(layout_id));
  if (it == states_.end()) throw Error(Errc::unknown_layout, "unknown layout '" + std::string(layout_id) + "'");
  return static_cast<int>(std::count_if(it->second.history.begin(), it->second.history.end(),
                                        [](const LedgerEntry& e) { return e.decision == Decision::flagged; }));
}

std::optional<std::string> ReviewLedger::queue_next() const {
  std::lock_guard lock(mu_);
  const std::string* best = nullptr;
  int best_gen = 0;
  for (const auto& [id, s] : states_) {
    const bool pending = s.history.empty() || s.history.back().decision == Decision::pending;
    if (!pending) continue;
    if (!best || s.generation < best_gen) {
      best = &id;
      best_gen = s.generation;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

json gate_to_json(const GateReport& r) {
  return json{{"layouts_by_decision", r.layouts_by_decision},
              {"passed_layouts", r.passed_layouts},
              {"excluded_layouts", r.excluded_layouts},
              {"blocked_layouts", r.blocked_layouts},
              {"samples_in", r.samples_in},
              {"samples_out", r.samples_out}};
}

std::vector<AnnotatedSample> export_gate(const ReviewLedger& ledger, std::span<const AnnotatedSample> samples,
                                         GateReport* report) {
  GateReport local;
  GateReport& r = report ? *report : local;
  r = GateReport{};
  for (auto name : kDecisionNames) r.layouts_by_decision[std::string(name)] = 0;
  std::set<std::string> approved;
  for (const auto& id : ledger.layouts()) {
    const Decision d = ledger.latest(id);
    ++r.layouts_by_decision[std::string(to_string(d))];
    if (d == Decision::approved) {
      approved.insert(id);
      r.passed_layouts.push_back(id);
    } else if (d == Decision::excluded) {
      r.excluded_layouts.push_back(id);
    } else {
      r.blocked_layouts.push_back(id);
    }
  }
  std::vector<AnnotatedSample> out;
  r.samples_in = samples.size();
  for (const auto& s : samples)
    if (approved.count(s.id.layout_id)) out.push_back(s);
  r.samples_out = out.size();
  return out;
}

}  // namespace screenforge::review
