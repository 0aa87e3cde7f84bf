#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qpgame/board.hpp"
#include "qpgame/strategies.hpp"

namespace qpgame {

enum class SessionStatus { InProgress, Finished };

/// How the engine's moves were chosen so far.
enum class EnginePlay {
  Strategy,   // a proven winning strategy
  Perfect,    // exhaustive search, every move exact
  Heuristic,  // at least one search hit the time budget
};

struct Snapshot {
  std::string id;
  int n = 0;
  Player human = Player::One;
  std::optional<Player> to_move;
  std::vector<Position> moves;
  std::vector<Position> available;
  /// Cells that are neither available nor occupied.
  std::vector<Position> attacked;
  SessionStatus status = SessionStatus::InProgress;
  std::optional<Player> winner;
  EnginePlay engine_play = EnginePlay::Perfect;
  StrategyKind engine_strategy = StrategyKind::PerfectSearch;
};

nlohmann::json to_json(const Snapshot& s);

class ServiceError : public std::runtime_error {
 public:
  enum class Kind { BadRequest, NotFound, NotYourTurn, GameOver, Busy, IllegalMove };

  ServiceError(Kind kind, const std::string& what, std::optional<Conflict> conflict = {})
      : std::runtime_error(what), kind_(kind), conflict_(conflict) {}

  Kind kind() const noexcept { return kind_; }
  const std::optional<Conflict>& conflict() const noexcept { return conflict_; }
  /// HTTP status for this error.
  int http_status() const noexcept;
  nlohmann::json to_json() const;

 private:
  Kind kind_;
  std::optional<Conflict> conflict_;
};

struct ServiceConfig {
  int max_n = 16;
  /// Search time per engine move before it falls back to a heuristic move.
  std::chrono::milliseconds engine_budget{2000};
  std::chrono::seconds idle_expiry{30 * 60};
};

/// In-memory human-vs-engine sessions. Thread-safe; moves within one session
/// are serialized and a submit that races an in-flight move is rejected.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});

  Snapshot create_game(int n, Player human);
  Snapshot submit_move(const std::string& id, Position p);
  Snapshot get_game(const std::string& id);
  /// Idempotent.
  void delete_game(const std::string& id);

  std::size_t session_count() const;
  /// Drops sessions idle longer than the configured expiry.
  std::size_t purge_idle(std::chrono::steady_clock::time_point now = std::chrono::steady_clock::now());

  const ServiceConfig& config() const noexcept { return config_; }

 private:
  struct Session {
    std::mutex mu;
    std::string id;
    GameState state;
    Player human;
    StrategyKind strategy;
    EnginePlay play;
    std::chrono::steady_clock::time_point last_access;

    Session(std::string id_, Dims d, Player human_, StrategyKind strategy_, EnginePlay play_)
        : id(std::move(id_)),
          state(d),
          human(human_),
          strategy(strategy_),
          play(play_),
          last_access(std::chrono::steady_clock::now()) {}
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  void play_engine(Session& s);
  Snapshot snapshot(const Session& s) const;
  std::string new_id();

  ServiceConfig config_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 id_rng_;
};

/// HTTP/JSON front end for a GameService, optionally serving static UI assets.
class HttpServer {
 public:
  HttpServer(GameService& service, std::optional<std::filesystem::path> static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  /// listen() on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qpgame
