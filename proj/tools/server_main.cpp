// bishop-server: the describer/listener game over HTTP.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "bishop/error.hpp"
#include "bishop/game_service.hpp"
#include "bishop/http_api.hpp"

namespace {
bishop::HttpServer* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game server for the referring-expression listener"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string lexicon_path = BISHOP_DEFAULT_LEXICON;
  std::string transcripts;
  app.add_option("--host", host)->capture_default_str();
  app.add_option("--port", port)->capture_default_str();
  app.add_option("--lexicon", lexicon_path)->capture_default_str();
  app.add_option("--transcripts", transcripts, "Directory for corpus transcripts");
  CLI11_PARSE(app, argc, argv);

  try {
    auto lexicon =
        std::make_shared<const bishop::Lexicon>(bishop::load_lexicon_file(lexicon_path));
    bishop::GameService::Options options;
    if (!transcripts.empty()) options.transcript_dir = transcripts;
    bishop::GameService service(lexicon, options);
    bishop::HttpServer server(service);
    const int bound = server.bind(host, port);
    if (bound < 0) {
      std::cerr << "bishop-server: cannot bind " << host << ":" << port << '\n';
      return 1;
    }
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    server.listen_after_bind();
  } catch (const bishop::Error& e) {
    std::cerr << "bishop-server: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
