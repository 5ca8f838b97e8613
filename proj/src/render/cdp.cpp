#include "screenforge/render/cdp.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <future>
#include <list>
#include <map>
#include <mutex>
#include <thread>

#include <boost/asio/connect.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "screenforge/error.hpp"

namespace screenforge::render {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using nlohmann::json;
using tcp = asio::ip::tcp;

class CdpConnection::EventWait {
 public:
  std::string method;
  std::string session_id;
  EventFilter filter;
  bool done = false;
  json params;
};

struct CdpConnection::Impl {
  asio::io_context io;
  websocket::stream<beast::tcp_stream> ws{io};
  beast::flat_buffer buffer;
  std::thread thread;

  std::mutex mu;
  std::condition_variable cv;
  std::atomic<bool> open{false};
  std::string failure;
  std::int64_t next_id = 1;
  std::map<std::int64_t, std::promise<json>> pending;
  std::list<std::shared_ptr<EventWait>> waiters;
  std::deque<std::string> outbox;  // touched only on the I/O thread
  bool writing = false;

  void fail_all(const std::string& why) {
    std::lock_guard lock(mu);
    if (!open.exchange(false) && !failure.empty()) return;
    failure = why;
    for (auto& [id, p] : pending) {
      p.set_exception(std::make_exception_ptr(Error(Errc::browser_crashed, "browser connection lost: " + why)));
    }
    pending.clear();
    cv.notify_all();
  }

  void read_loop() {
    ws.async_read(buffer, [this](beast::error_code ec, std::size_t) {
      if (ec) {
        fail_all(ec.message());
        return;
      }
      const std::string text = beast::buffers_to_string(buffer.data());
      buffer.consume(buffer.size());
      dispatch(text);
      read_loop();
    });
  }

  void dispatch(const std::string& text) {
    json msg = json::parse(text, nullptr, false);
    if (msg.is_discarded()) return;
    std::lock_guard lock(mu);
    if (msg.contains("id")) {
      auto it = pending.find(msg.at("id").get<std::int64_t>());
      if (it == pending.end()) return;
      it->second.set_value(std::move(msg));
      pending.erase(it);
      return;
    }
    if (!msg.contains("method")) return;
    const std::string method = msg.at("method").get<std::string>();
    const std::string session = msg.value("sessionId", std::string());
    const json params = msg.value("params", json::object());
    for (auto it = waiters.begin(); it != waiters.end(); ++it) {
      auto& w = **it;
      if (w.method == method && w.session_id == session && (!w.filter || w.filter(params))) {
        w.done = true;
        w.params = params;
        waiters.erase(it);
        cv.notify_all();
        break;
      }
    }
  }

  void send(std::string text) {
    asio::post(io, [this, text = std::move(text)]() mutable {
      outbox.push_back(std::move(text));
      if (!writing) write_next();
    });
  }

  void write_next() {
    if (outbox.empty()) {
      writing = false;
      return;
    }
    writing = true;
    ws.text(true);
    ws.async_write(asio::buffer(outbox.front()), [this](beast::error_code ec, std::size_t) {
      outbox.pop_front();
      if (ec) {
        fail_all(ec.message());
        return;
      }
      write_next();
    });
  }
};

CdpConnection::CdpConnection(const std::string& host, unsigned short port, const std::string& ws_path)
    : impl_(std::make_unique<Impl>()) {
  try {
    tcp::resolver resolver(impl_->io);
    auto results = resolver.resolve(host, std::to_string(port));
    beast::get_lowest_layer(impl_->ws).expires_after(std::chrono::seconds(10));
    beast::get_lowest_layer(impl_->ws).connect(results);
    beast::get_lowest_layer(impl_->ws).expires_never();
    impl_->ws.read_message_max(512 * 1024 * 1024);
    impl_->ws.handshake(host + ":" + std::to_string(port), ws_path);
  } catch (const std::exception& e) {
    throw Error(Errc::protocol_error, std::string("cannot connect to DevTools endpoint: ") + e.what());
  }
  impl_->open = true;
  impl_->read_loop();
  impl_->thread = std::thread([this] { impl_->io.run(); });
}

CdpConnection::~CdpConnection() { close(); }

void CdpConnection::close() {
  if (!impl_ || !impl_->thread.joinable()) return;
  asio::post(impl_->io, [this] {
    beast::error_code ec;
    beast::get_lowest_layer(impl_->ws).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(impl_->ws).socket().close(ec);
  });
  impl_->thread.join();
  impl_->fail_all("closed");
}

bool CdpConnection::alive() const { return impl_->open.load(); }

json CdpConnection::call(const std::string& method, const json& params, const std::string& session_id,
                         std::chrono::milliseconds timeout) {
  std::future<json> reply;
  json msg{{"method", method}, {"params", params}};
  {
    std::lock_guard lock(impl_->mu);
    if (!impl_->open) throw Error(Errc::browser_crashed, "browser connection lost: " + impl_->failure);
    const std::int64_t id = impl_->next_id++;
    msg["id"] = id;
    reply = impl_->pending[id].get_future();
  }
  if (!session_id.empty()) msg["sessionId"] = session_id;
  impl_->send(msg.dump());
  if (reply.wait_for(timeout) != std::future_status::ready) {
    std::lock_guard lock(impl_->mu);
    impl_->pending.erase(msg.at("id").get<std::int64_t>());
    throw Error(Errc::protocol_error, method + " timed out");
  }
  json res = reply.get();
  if (res.contains("error")) {
    throw Error(Errc::protocol_error, method + ": " + res.at("error").value("message", res.at("error").dump()));
  }
  return res.value("result", json::object());
}

std::shared_ptr<CdpConnection::EventWait> CdpConnection::expect(const std::string& method,
                                                                const std::string& session_id, EventFilter filter) {
  auto w = std::make_shared<EventWait>();
  w->method = method;
  w->session_id = session_id;
  w->filter = std::move(filter);
  std::lock_guard lock(impl_->mu);
  impl_->waiters.push_back(w);
  return w;
}

bool CdpConnection::wait(const std::shared_ptr<EventWait>& token, std::chrono::milliseconds timeout) {
  std::unique_lock lock(impl_->mu);
  const bool ok = impl_->cv.wait_for(lock, timeout, [&] { return token->done || !impl_->open; });
  if (token->done) return true;
  impl_->waiters.remove(token);
  if (ok && !impl_->open) throw Error(Errc::browser_crashed, "browser connection lost: " + impl_->failure);
  return false;
}

}  // namespace screenforge::render
