#include "bishop/http_api.hpp"

#include <httplib.h>

namespace bishop {

namespace {

nlohmann::json parse_body(const httplib::Request& req, bool* ok) {
  *ok = true;
  if (req.body.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded()) *ok = false;
  return j;
}

void send(httplib::Response& res, const GameService::Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

struct HttpServer::Impl {
  GameService& service;
  httplib::Server server;

  explicit Impl(GameService& s) : service(s) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    auto with_body = [this](auto handler) {
      return [this, handler](const httplib::Request& req, httplib::Response& res) {
        bool ok = false;
        const auto body = parse_body(req, &ok);
        if (!ok) {
          send(res, GameService::error(400, "parse_error", "request body is not valid JSON"));
          return;
        }
        send(res, handler(req, body));
      };
    };

    server.Post("/sessions", with_body([this](const httplib::Request&, const nlohmann::json& b) {
                  return service.create_session(b);
                }));
    server.Get(R"(/sessions/([^/]+)/scene)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 send(res, service.scene(req.matches[1]));
               });
    server.Post(R"(/sessions/([^/]+)/utterance)",
                with_body([this](const httplib::Request& req, const nlohmann::json& b) {
                  return service.submit_utterance(req.matches[1], b);
                }));
    server.Post(R"(/sessions/([^/]+)/confirm)",
                with_body([this](const httplib::Request& req, const nlohmann::json& b) {
                  return service.confirm(req.matches[1], b);
                }));
    server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
      service.expire_idle();
      send(res, service.health());
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      send(res, GameService::error(res.status, res.status == 404 ? "not_found" : "http_error",
                                   res.status == 404 ? "no such route" : "request failed"));
    });
  }
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace bishop
