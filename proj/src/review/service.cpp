#include "screenforge/review/service.hpp"

#include "screenforge/core/record.hpp"
#include "screenforge/error.hpp"

namespace screenforge::review {

using nlohmann::json;

ReviewService::ReviewService(ReviewLedger& ledger, PreviewRenderer renderer)
    : ledger_(ledger), renderer_(std::move(renderer)) {}

std::mutex& ReviewService::layout_mutex(const std::string& layout_id) {
  std::lock_guard lock(mu_);
  auto& slot = render_locks_[layout_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::vector<Preview> ReviewService::rerender(const std::string& layout_id) {
  if (!ledger_.knows(layout_id)) throw Error(Errc::unknown_layout, "unknown layout '" + layout_id + "'");
  std::lock_guard serial(layout_mutex(layout_id));
  std::vector<Preview> fresh;
  try {
    fresh = renderer_(layout_id);
  } catch (const std::exception& e) {
    ledger_.submit(layout_id, Decision::render_failed, e.what());
    throw;
  }
  set_previews(layout_id, fresh);
  ledger_.requeue(layout_id, "rerendered");
  return fresh;
}

std::vector<Preview> ReviewService::previews(const std::string& layout_id) const {
  std::lock_guard lock(mu_);
  auto it = previews_.find(layout_id);
  return it == previews_.end() ? std::vector<Preview>{} : it->second;
}

void ReviewService::set_previews(const std::string& layout_id, std::vector<Preview> previews) {
  std::lock_guard lock(mu_);
  previews_[layout_id] = std::move(previews);
}

json ReviewService::item_json(const std::string& layout_id) const {
  json history = json::array();
  for (const auto& e : ledger_.history(layout_id)) {
    history.push_back({{"seq", e.seq}, {"decision", to_string(e.decision)}, {"note", e.note}, {"requeue", e.requeue}});
  }
  json previews = json::array();
  for (const auto& p : this->previews(layout_id)) {
    previews.push_back({{"fill", p.fill},
                        {"image", "/layout/" + layout_id + "/preview/" + p.fill + ".png"},
                        {"sample", sample_to_json(p.sample)}});
  }
  return json{{"layout_id", layout_id},
              {"decision", to_string(ledger_.latest(layout_id))},
              {"note", ledger_.latest_note(layout_id)},
              {"iteration_count", ledger_.iteration_count(layout_id)},
              {"history", history},
              {"previews", previews}};
}

json ReviewService::report_json() const {
  GateReport r;
  export_gate(ledger_, {}, &r);
  json j = gate_to_json(r);
  j.erase("samples_in");
  j.erase("samples_out");
  j["history_entries"] = ledger_.history_size();
  return j;
}

}  // namespace screenforge::review
