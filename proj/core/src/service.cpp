#include "qpgame/service.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qpgame {

namespace {

nlohmann::json cells(const std::vector<Position>& ps) {
  nlohmann::json out = nlohmann::json::array();
  for (Position p : ps) out.push_back({p.row, p.col});
  return out;
}

const char* to_string(EnginePlay play) {
  switch (play) {
    case EnginePlay::Strategy: return "strategy";
    case EnginePlay::Perfect: return "perfect";
    case EnginePlay::Heuristic: return "heuristic";
  }
  return "unknown";
}

std::string constraint_name(const Conflict& c) {
  if (c.occupied) return "occupied";
  switch (c.constraint) {
    case Constraint::Row: return "row";
    case Constraint::Column: return "column";
    case Constraint::FallingDiagonal: return "falling_diagonal";
    case Constraint::RisingDiagonal: return "rising_diagonal";
  }
  return "unknown";
}

StrategyKind engine_strategy_for(int n, Player engine) {
  if (engine == Player::One && n % 2 == 1) return StrategyKind::MirrorOdd;
  if (engine == Player::One && n == 4) return StrategyKind::InnerFour;
  return StrategyKind::PerfectSearch;
}

}  // namespace

nlohmann::json to_json(const Snapshot& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["n"] = s.n;
  j["human"] = player_number(s.human);
  j["toMove"] = s.to_move ? nlohmann::json(player_number(*s.to_move)) : nlohmann::json(nullptr);
  j["moves"] = cells(s.moves);
  j["available"] = cells(s.available);
  j["attacked"] = cells(s.attacked);
  j["status"] = s.status == SessionStatus::InProgress ? "in_progress" : "finished";
  j["winner"] = s.winner ? nlohmann::json(player_number(*s.winner)) : nlohmann::json(nullptr);
  j["enginePlay"] = to_string(s.engine_play);
  j["engineStrategy"] = std::string(to_string(s.engine_strategy));
  return j;
}

int ServiceError::http_status() const noexcept {
  switch (kind_) {
    case Kind::BadRequest: return 400;
    case Kind::NotFound: return 404;
    case Kind::NotYourTurn:
    case Kind::GameOver:
    case Kind::Busy:
    case Kind::IllegalMove: return 409;
  }
  return 500;
}

nlohmann::json ServiceError::to_json() const {
  static constexpr const char* kNames[] = {"bad_request", "not_found",  "not_your_turn",
                                           "game_over",   "move_in_progress", "illegal_move"};
  nlohmann::json j;
  j["error"] = kNames[static_cast<int>(kind_)];
  j["message"] = what();
  if (conflict_) {
    j["constraint"] = constraint_name(*conflict_);
    j["conflict"] = {conflict_->queen.row, conflict_->queen.col};
  }
  return j;
}

GameService::GameService(ServiceConfig config)
    : config_(config), id_rng_(std::random_device{}()) {}

std::string GameService::new_id() {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << id_rng_() << std::setw(16) << id_rng_();
  return out.str();
}

Snapshot GameService::create_game(int n, Player human) {
  if (n < 1 || n > config_.max_n) {
    throw ServiceError(ServiceError::Kind::BadRequest,
                       "n must be between 1 and " + std::to_string(config_.max_n));
  }
  purge_idle();
  const Player engine = opponent(human);
  const StrategyKind strategy = engine_strategy_for(n, engine);
  const EnginePlay play =
      strategy == StrategyKind::PerfectSearch ? EnginePlay::Perfect : EnginePlay::Strategy;

  std::shared_ptr<Session> session;
  {
    std::lock_guard lock(mu_);
    std::string id;
    do {
      id = new_id();
    } while (sessions_.count(id) != 0);
    session = std::make_shared<Session>(id, Dims(n), human, strategy, play);
    sessions_.emplace(id, session);
  }
  std::lock_guard lock(session->mu);
  if (engine == Player::One) play_engine(*session);
  return snapshot(*session);
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(ServiceError::Kind::NotFound, "no game with id " + id);
  return it->second;
}

Snapshot GameService::submit_move(const std::string& id, Position p) {
  const auto session = find(id);
  std::unique_lock lock(session->mu, std::try_to_lock);
  if (!lock.owns_lock()) {
    throw ServiceError(ServiceError::Kind::Busy, "another move is being processed");
  }
  Session& s = *session;
  s.last_access = std::chrono::steady_clock::now();
  if (!s.state.has_available()) throw ServiceError(ServiceError::Kind::GameOver, "the game is over");
  if (s.state.to_move() != s.human) {
    throw ServiceError(ServiceError::Kind::NotYourTurn, "it is not the human player's turn");
  }
  if (!in_bounds(p, s.state.dims())) {
    throw ServiceError(ServiceError::Kind::BadRequest, "cell " + to_string(p) + " is off the board");
  }
  if (const auto conflict = s.state.conflict_at(p)) {
    throw ServiceError(ServiceError::Kind::IllegalMove, describe(*conflict), conflict);
  }
  s.state.place(p);
  if (s.state.has_available()) play_engine(s);
  return snapshot(s);
}

void GameService::play_engine(Session& s) {
  StrategyContext ctx;
  ctx.deadline = std::chrono::steady_clock::now() + config_.engine_budget;
  const MoveChoice choice = choose_move(s.strategy, s.state, ctx);
  if (!choice.move) return;
  if (!s.state.is_available(*choice.move)) {
    throw std::logic_error("engine chose unavailable cell " + to_string(*choice.move));
  }
  s.state.place(*choice.move);
  if (!choice.exact) s.play = EnginePlay::Heuristic;

  if (!s.state.has_available() && s.strategy == StrategyKind::MirrorOdd &&
      s.state.move_count() % 2 == 0) {
    throw std::logic_error("mirror strategy lost a game");
  }
}

Snapshot GameService::snapshot(const Session& s) const {
  Snapshot snap;
  snap.id = s.id;
  snap.n = s.state.dims().n();
  snap.human = s.human;
  snap.moves.assign(s.state.moves().begin(), s.state.moves().end());
  snap.available = s.state.available_positions();
  const int n = snap.n;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Position p{r, c};
      if (s.state.is_available(p)) continue;
      if (std::find(snap.moves.begin(), snap.moves.end(), p) != snap.moves.end()) continue;
      snap.attacked.push_back(p);
    }
  }
  if (snap.available.empty()) {
    snap.status = SessionStatus::Finished;
    snap.winner = snap.moves.size() % 2 == 1 ? Player::One : Player::Two;
  } else {
    snap.to_move = s.state.to_move();
  }
  snap.engine_play = s.play;
  snap.engine_strategy = s.strategy;
  return snap;
}

Snapshot GameService::get_game(const std::string& id) {
  const auto session = find(id);
  std::lock_guard lock(session->mu);
  session->last_access = std::chrono::steady_clock::now();
  return snapshot(*session);
}

void GameService::delete_game(const std::string& id) {
  std::lock_guard lock(mu_);
  sessions_.erase(id);
}

std::size_t GameService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::size_t GameService::purge_idle(std::chrono::steady_clock::time_point now) {
  std::lock_guard lock(mu_);
  std::size_t removed = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock session_lock(it->second->mu, std::try_to_lock);
    if (session_lock.owns_lock() && now - it->second->last_access > config_.idle_expiry) {
      session_lock.unlock();
      it = sessions_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

}  // namespace qpgame
