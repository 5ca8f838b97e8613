#include <chrono>
#include <thread>

#include <httplib.h>

#include "screenforge/error.hpp"
#include "screenforge/review/service.hpp"
#include "screenforge/util/fs.hpp"

namespace screenforge::review {

using nlohmann::json;

struct ServerHandle {
  httplib::Server server;
  std::thread thread;
};

namespace {

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& what) {
  send_json(res, {{"error", code}, {"message", what}}, status);
}

int status_for(Errc code) {
  switch (code) {
    case Errc::unknown_layout: return 404;
    case Errc::invalid_argument:
    case Errc::parse_error: return 400;
    default: return 500;
  }
}

// Runs a handler, mapping library errors onto HTTP statuses.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    send_error(res, status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "parse_error", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

}  // namespace

ReviewServer::ReviewServer(ReviewService& service) : impl_(std::make_unique<ServerHandle>()) {
  auto& srv = impl_->server;
  ReviewService* svc = &service;

  srv.Get("/queue/next", [svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      const auto next = svc->ledger().queue_next();
      if (!next) {
        send_json(res, {{"done", true}});
        return;
      }
      json item = svc->item_json(*next);
      item["done"] = false;
      send_json(res, item);
    });
  });

  srv.Get(R"(/layout/([^/]+))", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, svc->item_json(req.matches[1])); });
  });

  srv.Get(R"(/layout/([^/]+)/preview/([^/]+)\.png)", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string fill = req.matches[2];
      for (const auto& p : svc->previews(req.matches[1])) {
        if (p.fill != fill) continue;
        res.set_content(read_file(p.image), "image/png");
        return;
      }
      send_error(res, 404, "no_preview", "no preview for fill state '" + fill + "'");
    });
  });

  srv.Post(R"(/layout/([^/]+)/decision)", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      const auto name = body.at("decision").get<std::string>();
      const auto d = parse_decision(name);
      if (!d || *d == Decision::pending || *d == Decision::render_failed)
        throw Error(Errc::invalid_argument, "decision must be approved, flagged or excluded");
      const Ack ack = svc->ledger().submit(std::string(req.matches[1]), *d, body.value("note", std::string()),
                                           body.value("idempotency_key", std::string()));
      send_json(res, {{"seq", ack.seq}, {"duplicate", ack.duplicate}, {"decision", name}});
    });
  });

  srv.Post(R"(/layout/([^/]+)/rerender)", [svc](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(res, [&] {
      try {
        svc->rerender(id);
      } catch (const Error& e) {
        if (e.code() == Errc::unknown_layout) throw;
        json item = svc->item_json(id);
        item["error"] = e.what();
        send_json(res, item, 502);
        return;
      }
      send_json(res, svc->item_json(id));
    });
  });

  srv.Get("/report", [svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, svc->report_json()); });
  });
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::start(const std::string& host, int port) {
  auto& srv = impl_->server;
  int bound = port;
  if (port == 0) {
    bound = srv.bind_to_any_port(host);
  } else if (!srv.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error(Errc::io_error, "cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([&srv] { srv.listen_after_bind(); });
  while (!srv.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(2));
  return bound;
}

void ReviewServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) throw Error(Errc::io_error, "cannot listen on " + host + ":" + std::to_string(port));
}

void ReviewServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace screenforge::review
