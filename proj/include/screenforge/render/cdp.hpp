#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

namespace screenforge::render {

// A DevTools protocol connection over one WebSocket. Calls may be issued from
// any thread; a background I/O thread reads responses and events and routes
// them by message id and session id (flattened target sessions).
class CdpConnection {
 public:
  // `ws_path` is the browser endpoint path, e.g. "/devtools/browser/<uuid>".
  CdpConnection(const std::string& host, unsigned short port, const std::string& ws_path);
  ~CdpConnection();
  CdpConnection(const CdpConnection&) = delete;
  CdpConnection& operator=(const CdpConnection&) = delete;

  // Sends a command and blocks for its result. Throws ProtocolError for
  // protocol-level errors and timeouts, BrowserCrashed if the socket drops.
  nlohmann::json call(const std::string& method, const nlohmann::json& params = nlohmann::json::object(),
                      const std::string& session_id = {},
                      std::chrono::milliseconds timeout = std::chrono::seconds(60));

  using EventFilter = std::function<bool(const nlohmann::json& params)>;

  // Registers interest in an event before the action that triggers it; the
  // returned token is then waited on.
  class EventWait;
  std::shared_ptr<EventWait> expect(const std::string& method, const std::string& session_id,
                                    EventFilter filter = nullptr);
  // Blocks until the event arrives; returns false on timeout. Throws
  // BrowserCrashed if the connection drops meanwhile.
  bool wait(const std::shared_ptr<EventWait>& token, std::chrono::milliseconds timeout);

  bool alive() const;
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace screenforge::render
