#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"

namespace screenforge::review {

enum class Decision { pending, approved, flagged, excluded, render_failed };

std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view s);

struct LedgerEntry {
  std::uint64_t seq = 0;
  std::string layout_id;
  Decision decision = Decision::pending;
  std::string note;
  std::string idempotency_key;  // empty when none was given
  bool requeue = false;         // pending entry written by a re-render
};

struct Ack {
  std::uint64_t seq = 0;
  bool duplicate = false;  // the idempotency key was already recorded
};

// Append-only decision history, one JSON line per entry, fsynced before a
// submission returns. Layouts absent from the history are pending. A torn
// final line (crash mid-write) is ignored on load.
class ReviewLedger {
 public:
  ReviewLedger(std::filesystem::path file, std::vector<std::string> layouts);

  const std::filesystem::path& file() const { return file_; }
  bool knows(std::string_view layout_id) const;
  std::vector<std::string> layouts() const;

  // Throws UnknownLayout. A repeated non-empty idempotency key returns the
  // original ack without appending.
  Ack submit(std::string_view layout_id, Decision decision, std::string_view note = {},
             std::string_view idempotency_key = {});
  Ack requeue(std::string_view layout_id, std::string_view note = {});

  Decision latest(std::string_view layout_id) const;
  std::string latest_note(std::string_view layout_id) const;
  std::vector<LedgerEntry> history(std::string_view layout_id) const;
  std::size_t history_size() const;
  int iteration_count(std::string_view layout_id) const;  // flags so far

  // Lowest (requeue generation, layout id) among pending layouts.
  std::optional<std::string> queue_next() const;

 private:
  struct State {
    std::vector<LedgerEntry> history;
    int generation = 0;
  };
  Ack append(LedgerEntry entry);
  void apply(const LedgerEntry& e);

  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::map<std::string, State> states_;
  std::map<std::string, Ack> keys_;
  std::uint64_t next_seq_ = 1;
};

struct GateReport {
  std::map<std::string, std::size_t> layouts_by_decision;
  std::vector<std::string> passed_layouts;
  std::vector<std::string> excluded_layouts;
  std::vector<std::string> blocked_layouts;  // pending, flagged or failed
  std::size_t samples_in = 0;
  std::size_t samples_out = 0;
};

nlohmann::json gate_to_json(const GateReport& r);

// Keeps samples of layouts whose latest decision is approved.
std::vector<AnnotatedSample> export_gate(const ReviewLedger& ledger, std::span<const AnnotatedSample> samples,
                                         GateReport* report = nullptr);

struct Preview {
  std::string fill;  // fill tag
  std::filesystem::path image;
  AnnotatedSample sample;
};

// Re-runs the pipeline for one layout and returns its previews. Errors
// propagate.
using PreviewRenderer = std::function<std::vector<Preview>(const std::string& layout_id)>;

class ReviewService {
 public:
  ReviewService(ReviewLedger& ledger, PreviewRenderer renderer);

  ReviewLedger& ledger() { return ledger_; }

  // Renders, stores previews and requeues the layout; on failure records
  // render_failed with the error text and rethrows.
  std::vector<Preview> rerender(const std::string& layout_id);
  std::vector<Preview> previews(const std::string& layout_id) const;
  void set_previews(const std::string& layout_id, std::vector<Preview> previews);

  nlohmann::json item_json(const std::string& layout_id) const;
  nlohmann::json report_json() const;

 private:
  std::mutex& layout_mutex(const std::string& layout_id);

  ReviewLedger& ledger_;
  PreviewRenderer renderer_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<Preview>> previews_;
  std::map<std::string, std::unique_ptr<std::mutex>> render_locks_;
};

struct ServerHandle;

// Local HTTP API: GET /queue/next, GET /layout/{id}, GET
// /layout/{id}/preview/{fill}.png, POST /layout/{id}/decision, POST
// /layout/{id}/rerender, GET /report. JSON bodies.
class ReviewServer {
 public:
  explicit ReviewServer(ReviewService& service);
  ~ReviewServer();

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port. Throws IoError.
  int start(const std::string& host, int port);
  // Blocks the caller until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  std::unique_ptr<ServerHandle> impl_;
};

}  // namespace screenforge::review
