#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"
#include "screenforge/error.hpp"

namespace screenforge::render {

class CdpConnection;

struct Viewport {
  int width = 1400;
  int height = 900;

  // "WxH". Throws InvalidArgument, including for widths below 320.
  static Viewport parse(std::string_view s);
  std::string str() const;
};

struct RenderJob {
  SampleId sample_id;
  std::string document;            // page source
  std::filesystem::path page_path; // where the document is written before loading
  Viewport viewport;
  bool full_page = true;
};

struct RenderResult {
  std::string image;  // PNG bytes
  ImageDims image_dims;
  nlohmann::json raw_annotations;
  std::map<std::string, double> timings_ms;
  std::vector<std::string> warnings;  // per-element extractor failures
};

// Width and height from a PNG's IHDR chunk. Throws ProtocolError if the bytes
// are not a PNG.
ImageDims png_dimensions(std::string_view png);

struct BrowserOptions {
  std::filesystem::path executable;  // defaults to $SCREENFORGE_BROWSER
  std::vector<std::string> extra_args;
  std::chrono::milliseconds startup_timeout{30000};
};

// A launched browser process and its protocol connection.
class Browser {
 public:
  explicit Browser(BrowserOptions options);
  ~Browser();
  Browser(const Browser&) = delete;
  Browser& operator=(const Browser&) = delete;

  CdpConnection& cdp() { return *cdp_; }
  bool alive() const;
  int pid() const { return pid_; }

 private:
  void shutdown();

  int pid_ = -1;
  std::filesystem::path profile_dir_;
  std::unique_ptr<CdpConnection> cdp_;
};

struct RendererOptions {
  BrowserOptions browser;
  int recycle_every = 50;  // jobs per browser process
  std::chrono::milliseconds navigation_timeout{30000};
  std::string extractor_source;  // empty: the bundled script
  std::int64_t frozen_clock_ms = 1704067200000;  // 2024-01-01T00:00:00Z
};

// Renders jobs on one shared browser; each job gets its own browser context
// and page, so jobs may run concurrently from several threads.
class Renderer {
 public:
  explicit Renderer(RendererOptions options);
  ~Renderer();

  // Throws NavigationTimeout, ScriptError, ProtocolError, BrowserCrashed.
  RenderResult render(const RenderJob& job);

  int browser_launches() const { return launches_; }

 private:
  std::shared_ptr<Browser> acquire();
  void release();

  RendererOptions options_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::shared_ptr<Browser> browser_;
  int jobs_on_browser_ = 0;
  int active_ = 0;
  int launches_ = 0;
};

struct BatchItem {
  std::optional<RenderResult> result;
  std::optional<Error> error;
  bool skipped = false;  // not attempted because the batch aborted
};

struct BatchOutcome {
  std::vector<BatchItem> items;  // job order
  bool aborted = false;          // the browser crashed
};

// Runs jobs on `parallelism` workers. `on_result` is called in job order as
// results become available. A BrowserCrashed failure stops the batch; items
// already finished are kept.
BatchOutcome render_batch(Renderer& renderer, const std::vector<RenderJob>& jobs, int parallelism,
                          const std::function<void(std::size_t, const BatchItem&)>& on_result = nullptr);

// The environment's browser: $SCREENFORGE_BROWSER, or empty.
std::filesystem::path default_browser();

}  // namespace screenforge::render
