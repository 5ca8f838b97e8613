#include "screenforge/render/harness.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

#include <boost/beast/core/detail/base64.hpp>

#include "screenforge/render/cdp.hpp"
#include "screenforge/render/extractor.hpp"
#include "screenforge/templating/template.hpp"
#include "screenforge/util/fs.hpp"

extern char** environ;

namespace screenforge::render {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

Viewport Viewport::parse(std::string_view s) {
  static const std::regex re(R"(^([0-9]{1,5})x([0-9]{1,5})$)");
  std::cmatch m;
  if (!std::regex_match(s.data(), s.data() + s.size(), m, re)) {
    throw Error(Errc::invalid_argument, "viewport must look like 1400x900, got '" + std::string(s) + "'");
  }
  Viewport v{std::stoi(m[1].str()), std::stoi(m[2].str())};
  if (v.width < 320) throw Error(Errc::invalid_argument, "viewport width must be at least 320");
  if (v.height < 1) throw Error(Errc::invalid_argument, "viewport height must be positive");
  return v;
}

std::string Viewport::str() const { return std::to_string(width) + "x" + std::to_string(height); }

ImageDims png_dimensions(std::string_view png) {
  static constexpr unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (png.size() < 24 || std::memcmp(png.data(), sig, 8) != 0 || png.substr(12, 4) != "IHDR") {
    throw Error(Errc::protocol_error, "screenshot is not a PNG");
  }
  auto be32 = [&](std::size_t at) {
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(png[at])) << 24) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(png[at + 1])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(png[at + 2])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(png[at + 3]));
  };
  return ImageDims{static_cast<int>(be32(16)), static_cast<int>(be32(20))};
}

fs::path default_browser() {
  const char* env = std::getenv("SCREENFORGE_BROWSER");
  return env ? fs::path(env) : fs::path();
}

// ---- Browser ------------------------------------------------------------------

Browser::Browser(BrowserOptions options) {
  fs::path exe = options.executable.empty() ? default_browser() : options.executable;
  if (exe.empty()) throw Error(Errc::io_error, "no browser configured; set SCREENFORGE_BROWSER");
  std::error_code ec;
  if (!fs::exists(exe, ec)) throw Error(Errc::io_error, "browser '" + exe.string() + "' not found");

  std::string tmpl = (fs::temp_directory_path() / "screenforge-browser-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw Error(Errc::io_error, "cannot create browser profile directory");
  profile_dir_ = tmpl;

  std::vector<std::string> args = {
      exe.string(),
      "--headless",
      "--no-sandbox",
      "--no-zygote",
      "--disable-gpu",
      "--disable-dev-shm-usage",
      "--disable-extensions",
      "--disable-background-networking",
      "--disable-component-update",
      "--disable-default-apps",
      "--disable-sync",
      "--no-first-run",
      "--no-default-browser-check",
      "--hide-scrollbars",
      "--mute-audio",
      "--allow-file-access-from-files",
      "--font-render-hinting=none",
      "--force-color-profile=srgb",
      "--lang=en-US",
      "--remote-debugging-port=0",
      "--user-data-dir=" + profile_dir_.string(),
  };
  args.insert(args.end(), options.extra_args.begin(), options.extra_args.end());
  args.push_back("about:blank");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  const std::string log = (profile_dir_ / "browser.log").string();
  posix_spawn_file_actions_addopen(&actions, 1, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_adddup2(&actions, 1, 2);
  posix_spawn_file_actions_addopen(&actions, 0, "/dev/null", O_RDONLY, 0);
  pid_t pid = -1;
  const int rc = posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    fs::remove_all(profile_dir_, ec);
    throw Error(Errc::io_error, "cannot start browser '" + exe.string() + "': " + std::strerror(rc));
  }
  pid_ = pid;

  const fs::path port_file = profile_dir_ / "DevToolsActivePort";
  const auto deadline = Clock::now() + options.startup_timeout;
  while (true) {
    std::ifstream in(port_file);
    std::string port, path;
    if (in && std::getline(in, port) && std::getline(in, path) && !port.empty() && !path.empty()) {
      try {
        cdp_ = std::make_unique<CdpConnection>("127.0.0.1", static_cast<unsigned short>(std::stoi(port)), path);
        return;
      } catch (const Error&) {
        // The port file can appear before the socket accepts; retry until the deadline.
      }
    }
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) == pid_) {
      pid_ = -1;
      const std::string tail = read_file(profile_dir_ / "browser.log");
      fs::remove_all(profile_dir_, ec);
      throw Error(Errc::browser_crashed, "browser exited during startup: " + tail.substr(tail.size() > 600 ? tail.size() - 600 : 0));
    }
    if (Clock::now() > deadline) {
      shutdown();
      throw Error(Errc::protocol_error, "browser did not open its DevTools port in time");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(25));
  }
}

Browser::~Browser() { shutdown(); }

bool Browser::alive() const { return pid_ > 0 && cdp_ && cdp_->alive(); }

void Browser::shutdown() {
  if (cdp_) {
    if (cdp_->alive()) {
      try {
        cdp_->call("Browser.close", json::object(), {}, std::chrono::seconds(5));
      } catch (const Error&) {
      }
    }
    cdp_->close();
    cdp_.reset();
  }
  if (pid_ > 0) {
    int status = 0;
    const auto deadline = Clock::now() + std::chrono::seconds(5);
    while (waitpid(pid_, &status, WNOHANG) == 0) {
      if (Clock::now() > deadline) {
        kill(pid_, SIGKILL);
        waitpid(pid_, &status, 0);
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    pid_ = -1;
  }
  if (!profile_dir_.empty()) {
    std::error_code ec;
    fs::remove_all(profile_dir_, ec);
    profile_dir_.clear();
  }
}

// ---- Renderer -----------------------------------------------------------------

namespace {

std::string prelude(std::int64_t frozen_ms) {
  return R"js((function () {
  var T = )js" + std::to_string(frozen_ms) + R"js(;
  var RealDate = Date;
  function FrozenDate() {
    if (!new.target) return new RealDate(T).toString();
    if (arguments.length === 0) return new RealDate(T);
    return new (Function.prototype.bind.apply(RealDate, [null].concat(Array.prototype.slice.call(arguments))))();
  }
  FrozenDate.prototype = RealDate.prototype;
  FrozenDate.now = function () { return T; };
  FrozenDate.parse = RealDate.parse;
  FrozenDate.UTC = RealDate.UTC;
  Date = FrozenDate;
  var css = "html{font-family:'DejaVu Sans',sans-serif}" +
    "*,*::before,*::after{animation:none!important;transition:none!important;caret-color:transparent!important}";
  document.addEventListener("DOMContentLoaded", function () {
    var s = document.createElement("style");
    s.setAttribute("data-sf-injected", "");
    s.textContent = css;
    (document.head || document.documentElement).insertBefore(s, (document.head || document.documentElement).firstChild);
  });
})();
)js";
}

constexpr const char* kSettle =
    "document.fonts.ready.then(function () { return new Promise(function (r) {"
    " requestAnimationFrame(function () { requestAnimationFrame(function () { r(true); }); }); }); })";

constexpr const char* kDocHeight =
    "Math.ceil(Math.max(document.documentElement.scrollHeight, document.body ? document.body.scrollHeight : 0))";

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json evaluate(CdpConnection& cdp, const std::string& session, const std::string& expr, bool await_promise) {
  json res = cdp.call("Runtime.evaluate",
                      {{"expression", expr}, {"awaitPromise", await_promise}, {"returnByValue", true}}, session);
  if (res.contains("exceptionDetails")) {
    const auto& d = res.at("exceptionDetails");
    std::string msg = d.value("text", std::string("exception"));
    if (d.contains("exception") && d.at("exception").contains("description")) {
      msg = d.at("exception").at("description").get<std::string>();
    }
    throw Error(Errc::script_error, msg);
  }
  return res.at("result").value("value", json());
}

std::string decode_base64(const std::string& in) {
  namespace b64 = boost::beast::detail::base64;
  std::string out(b64::decoded_size(in.size()), '\0');
  const auto [written, read] = b64::decode(out.data(), in.data(), in.size());
  out.resize(written);
  return out;
}

}  // namespace

Renderer::Renderer(RendererOptions options) : options_(std::move(options)) {
  if (options_.extractor_source.empty()) options_.extractor_source = std::string(bundled_extractor_source());
  if (options_.recycle_every < 1) options_.recycle_every = 1;
}

Renderer::~Renderer() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return active_ == 0; });
  browser_.reset();
}

std::shared_ptr<Browser> Renderer::acquire() {
  std::unique_lock lock(mu_);
  while (true) {
    const bool stale = !browser_ || !browser_->alive() || jobs_on_browser_ >= options_.recycle_every;
    if (!stale) break;
    if (active_ > 0) {
      cv_.wait(lock);
      continue;
    }
    browser_.reset();
    browser_ = std::make_shared<Browser>(options_.browser);
    jobs_on_browser_ = 0;
    ++launches_;
    break;
  }
  ++active_;
  ++jobs_on_browser_;
  return browser_;
}

void Renderer::release() {
  std::lock_guard lock(mu_);
  --active_;
  cv_.notify_all();
}

RenderResult Renderer::render(const RenderJob& job) {
  if (job.viewport.width < 320) throw Error(Errc::invalid_argument, "viewport width must be at least 320");
  RenderResult out;
  auto t0 = Clock::now();
  std::shared_ptr<Browser> browser = acquire();
  struct Release {
    Renderer* r;
    ~Release() { r->release(); }
  } release_guard{this};
  CdpConnection& cdp = browser->cdp();
  out.timings_ms["browser"] = ms_since(t0);

  t0 = Clock::now();
  const std::string context = cdp.call("Target.createBrowserContext", {{"disposeOnDetach", true}})
                                  .at("browserContextId")
                                  .get<std::string>();
  std::string target;
  struct Cleanup {
    CdpConnection& cdp;
    const std::string& context;
    std::string& target;
    ~Cleanup() {
      if (!cdp.alive()) return;
      try {
        if (!target.empty()) cdp.call("Target.closeTarget", {{"targetId", target}}, {}, std::chrono::seconds(10));
        cdp.call("Target.disposeBrowserContext", {{"browserContextId", context}}, {}, std::chrono::seconds(10));
      } catch (const Error&) {
      }
    }
  } cleanup{cdp, context, target};
  target = cdp.call("Target.createTarget", {{"url", "about:blank"}, {"browserContextId", context}})
               .at("targetId")
               .get<std::string>();
  const std::string session =
      cdp.call("Target.attachToTarget", {{"targetId", target}, {"flatten", true}}).at("sessionId").get<std::string>();
  cdp.call("Page.enable", json::object(), session);
  int height = job.viewport.height;
  auto set_metrics = [&](int h) {
    cdp.call("Emulation.setDeviceMetricsOverride",
             {{"width", job.viewport.width}, {"height", h}, {"deviceScaleFactor", 1}, {"mobile", false}}, session);
  };
  set_metrics(height);
  for (auto [method, params] : {std::pair<const char*, json>{"Emulation.setTimezoneOverride", {{"timezoneId", "UTC"}}},
                                std::pair<const char*, json>{"Emulation.setLocaleOverride", {{"locale", "en-US"}}}}) {
    try {
      cdp.call(method, params, session);
    } catch (const Error& e) {
      if (e.code() != Errc::protocol_error) throw;
    }
  }
  cdp.call("Page.addScriptToEvaluateOnNewDocument",
           {{"source", prelude(options_.frozen_clock_ms) + "\n" + options_.extractor_source}}, session);
  out.timings_ms["setup"] = ms_since(t0);

  t0 = Clock::now();
  fs::path page = job.page_path;
  if (page.empty()) throw Error(Errc::invalid_argument, "render job has no page path");
  write_file_atomic(page, job.document);
  auto loaded = cdp.expect("Page.loadEventFired", session);
  const json nav = cdp.call("Page.navigate", {{"url", templating::file_url(page)}}, session);
  if (nav.contains("errorText") && !nav.at("errorText").get<std::string>().empty()) {
    throw Error(Errc::navigation_timeout, "navigation to " + page.string() + " failed: " + nav.at("errorText").get<std::string>());
  }
  if (!cdp.wait(loaded, options_.navigation_timeout)) {
    throw Error(Errc::navigation_timeout, "page " + page.string() + " did not finish loading");
  }
  evaluate(cdp, session, kSettle, true);
  out.timings_ms["load"] = ms_since(t0);

  t0 = Clock::now();
  if (job.full_page) {
    for (int round = 0; round < 4; ++round) {
      const int doc_h = evaluate(cdp, session, kDocHeight, false).get<int>();
      const int want = std::max(job.viewport.height, doc_h);
      if (want == height) break;
      height = want;
      set_metrics(height);
      evaluate(cdp, session, kSettle, true);
    }
  }
  const json value = evaluate(cdp, session, "window.__screenforgeExtract()", false);
  if (!value.is_string()) throw Error(Errc::script_error, "extractor returned no payload");
  out.raw_annotations = json::parse(value.get<std::string>(), nullptr, false);
  if (out.raw_annotations.is_discarded()) throw Error(Errc::script_error, "extractor payload is not JSON");
  for (const auto& rec : out.raw_annotations.value("records", json::array())) {
    if (rec.contains("error")) out.warnings.push_back(rec.value("key", "") + ": " + rec.at("error").get<std::string>());
  }
  out.timings_ms["extract"] = ms_since(t0);

  t0 = Clock::now();
  const json shot = cdp.call("Page.captureScreenshot",
                             {{"format", "png"},
                              {"fromSurface", true},
                              {"captureBeyondViewport", false},
                              {"clip", {{"x", 0}, {"y", 0}, {"width", job.viewport.width}, {"height", height}, {"scale", 1}}}},
                             session);
  out.image = decode_base64(shot.at("data").get<std::string>());
  out.image_dims = png_dimensions(out.image);
  out.timings_ms["capture"] = ms_since(t0);
  return out;
}

// ---- batches --------------------------------------------------------------------

BatchOutcome render_batch(Renderer& renderer, const std::vector<RenderJob>& jobs, int parallelism,
                          const std::function<void(std::size_t, const BatchItem&)>& on_result) {
  if (parallelism < 1) throw Error(Errc::invalid_argument, "parallelism must be >= 1");
  BatchOutcome outcome;
  outcome.items.resize(jobs.size());
  std::vector<bool> finished(jobs.size(), false);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex mu;
  std::size_t emitted = 0;

  auto emit_ready = [&] {
    // Called with `mu` held.
    while (emitted < jobs.size() && finished[emitted]) {
      if (on_result) on_result(emitted, outcome.items[emitted]);
      ++emitted;
    }
  };

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      BatchItem item;
      if (abort) {
        item.skipped = true;
      } else {
        try {
          item.result = renderer.render(jobs[i]);
        } catch (const Error& e) {
          item.error = e;
          if (e.code() == Errc::browser_crashed) abort = true;
        } catch (const std::exception& e) {
          item.error = Error(Errc::protocol_error, e.what());
        }
      }
      std::lock_guard lock(mu);
      outcome.items[i] = std::move(item);
      finished[i] = true;
      emit_ready();
    }
  };
  std::vector<std::thread> threads;
  const int n = std::min<int>(parallelism, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  outcome.aborted = abort;
  return outcome;
}

}  // namespace screenforge::render
