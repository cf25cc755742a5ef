#pragma once

#include <memory>
#include <string>

#include "bishop/game_service.hpp"

namespace bishop {

/// HTTP+JSON front end for GameService:
///   POST /sessions, GET /sessions/{id}/scene, POST /sessions/{id}/utterance,
///   POST /sessions/{id}/confirm, GET /healthz.
/// Responses carry permissive CORS headers.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop().
  bool listen_after_bind();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bishop
