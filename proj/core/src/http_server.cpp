#include <thread>

#include "httplib.h"
#include "qpgame/service.hpp"

namespace qpgame {

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>qpgame</title></head>
<body><h1>qpgame play service</h1>
<p>The web UI is not installed. Start the server with <code>--static DIR</code>
pointing at the built UI, or use the JSON API under <code>/api/games</code>.</p>
</body></html>
)";

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, const ServiceError& e) {
  send_json(res, e.http_status(), e.to_json());
}

nlohmann::json parse_body(const httplib::Request& req) {
  auto body = nlohmann::json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw ServiceError(ServiceError::Kind::BadRequest, "request body must be a JSON object");
  }
  return body;
}

int int_field(const nlohmann::json& body, const char* name) {
  const auto it = body.find(name);
  if (it == body.end() || !it->is_number_integer()) {
    throw ServiceError(ServiceError::Kind::BadRequest,
                       std::string("field '") + name + "' must be an integer");
  }
  return it->get<int>();
}

Player parse_side(const nlohmann::json& body) {
  const auto it = body.find("human");
  if (it == body.end()) return Player::One;
  if (it->is_number_integer()) {
    const int v = it->get<int>();
    if (v == 1) return Player::One;
    if (v == 2) return Player::Two;
  } else if (it->is_string()) {
    const auto v = it->get<std::string>();
    if (v == "player1" || v == "Player1" || v == "P1") return Player::One;
    if (v == "player2" || v == "Player2" || v == "P2") return Player::Two;
  }
  throw ServiceError(ServiceError::Kind::BadRequest, "field 'human' must be 1 or 2");
}

template <class Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(GameService& s) : service(s) {}
  GameService& service;
  httplib::Server server;
  std::thread thread;
};

HttpServer::HttpServer(GameService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  GameService& games = service;

  server.Post("/api/games", guarded([&games](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    const Snapshot snap = games.create_game(int_field(body, "n"), parse_side(body));
    send_json(res, 201, to_json(snap));
  }));

  server.Get(R"(/api/games/([0-9a-f]+))",
             guarded([&games](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, to_json(games.get_game(req.matches[1])));
             }));

  server.Post(R"(/api/games/([0-9a-f]+)/moves)",
              guarded([&games](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                const Position p{int_field(body, "r"), int_field(body, "c")};
                send_json(res, 200, to_json(games.submit_move(req.matches[1], p)));
              }));

  server.Delete(R"(/api/games/([0-9a-f]+))",
                guarded([&games](const httplib::Request& req, httplib::Response& res) {
                  games.delete_game(req.matches[1]);
                  res.status = 204;
                }));

  if (static_dir) {
    if (!server.set_mount_point("/", static_dir->string())) {
      throw std::runtime_error("static directory not found: " + static_dir->string());
    }
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace qpgame
