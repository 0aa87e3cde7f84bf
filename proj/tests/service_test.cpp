#include <gtest/gtest.h>

#include <algorithm>

#include "httplib.h"
#include "qpgame/service.hpp"
#include "test_util.hpp"

namespace qpgame {
namespace {

std::vector<Position> cells(const nlohmann::json& j) {
  std::vector<Position> out;
  for (const auto& c : j) out.push_back({c[0].get<int>(), c[1].get<int>()});
  return out;
}

TEST(GameService, EngineMirrorsOnFive) {
  GameService service;
  Snapshot snap = service.create_game(5, Player::Two);
  EXPECT_EQ(snap.engine_strategy, StrategyKind::MirrorOdd);
  EXPECT_EQ(snap.engine_play, EnginePlay::Strategy);
  ASSERT_EQ(snap.moves, (std::vector<Position>{{2, 2}}));
  const Dims d(5);
  while (snap.status == SessionStatus::InProgress) {
    const Position human = snap.available.back();
    const std::size_t before = snap.moves.size();
    snap = service.submit_move(snap.id, human);
    ASSERT_EQ(snap.moves.size(), before + 2);
    EXPECT_EQ(snap.moves.back(), mirror(human, d));
  }
  EXPECT_EQ(snap.winner, Player::One);
  EXPECT_FALSE(snap.to_move.has_value());
}

TEST(GameService, InnerFourFinishesInThreeMoves) {
  GameService service;
  Snapshot snap = service.create_game(4, Player::Two);
  ASSERT_EQ(snap.moves.size(), 1u);
  const Position open = snap.moves[0];
  EXPECT_EQ(snap.available.size(), 4u);
  snap = service.submit_move(snap.id, snap.available.front());
  EXPECT_EQ(snap.status, SessionStatus::Finished);
  EXPECT_EQ(snap.winner, Player::One);
  EXPECT_EQ(snap.moves.front(), open);

  Snapshot inner = service.create_game(4, Player::Two);
  ASSERT_EQ(inner.moves[0], (Position{1, 1}));
  inner = service.submit_move(inner.id, {0, 3});
  EXPECT_EQ(inner.moves.back(), (Position{3, 2}));
}

TEST(GameService, IllegalMoveLeavesStateAlone) {
  GameService service;
  const Snapshot start = service.create_game(5, Player::Two);
  try {
    service.submit_move(start.id, {2, 4});
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.http_status(), 409);
    const auto j = e.to_json();
    EXPECT_EQ(j["error"], "illegal_move");
    EXPECT_EQ(j["constraint"], "row");
    EXPECT_EQ(j["conflict"], nlohmann::json::array({2, 2}));
  }
  const Snapshot after = service.get_game(start.id);
  EXPECT_EQ(after.moves, start.moves);
  EXPECT_EQ(after.available, start.available);

  try {
    service.submit_move(start.id, {7, 0});
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.http_status(), 400);
  }
}

TEST(GameService, TurnAndLifecycleErrors) {
  GameService service;
  EXPECT_THROW(service.create_game(0, Player::One), ServiceError);
  EXPECT_THROW(service.create_game(17, Player::One), ServiceError);
  Snapshot snap = service.create_game(1, Player::One);
  snap = service.submit_move(snap.id, {0, 0});
  EXPECT_EQ(snap.winner, Player::One);
  try {
    service.submit_move(snap.id, {0, 0});
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.kind(), ServiceError::Kind::GameOver);
  }
  EXPECT_EQ(service.session_count(), 1u);
  service.delete_game(snap.id);
  service.delete_game(snap.id);
  EXPECT_EQ(service.session_count(), 0u);
  try {
    service.get_game(snap.id);
    FAIL();
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.http_status(), 404);
  }
}

TEST(GameService, SnapshotMasksPartitionTheBoard) {
  GameService service;
  std::mt19937_64 rng(4);
  for (int game = 0; game < 20; ++game) {
    const int n = 2 + static_cast<int>(rng() % 7);
    Snapshot snap = service.create_game(n, game % 2 == 0 ? Player::One : Player::Two);
    while (true) {
      EXPECT_EQ(snap.available, testing::naive_available(snap.moves, n));
      EXPECT_EQ(snap.moves.size() + snap.available.size() + snap.attacked.size(),
                static_cast<std::size_t>(n * n));
      for (Position p : snap.attacked) {
        EXPECT_EQ(std::count(snap.moves.begin(), snap.moves.end(), p), 0);
        EXPECT_FALSE(testing::naive_free(snap.moves, p));
      }
      if (snap.status == SessionStatus::Finished) break;
      snap = service.submit_move(snap.id, snap.available[rng() % snap.available.size()]);
    }
  }
}

TEST(GameService, IdleSessionsExpire) {
  ServiceConfig cfg;
  cfg.idle_expiry = std::chrono::seconds(60);
  GameService service(cfg);
  service.create_game(5, Player::One);
  EXPECT_EQ(service.purge_idle(), 0u);
  EXPECT_EQ(service.purge_idle(std::chrono::steady_clock::now() + std::chrono::minutes(2)), 1u);
  EXPECT_EQ(service.session_count(), 0u);
}

TEST(HttpServer, JsonRoundTrip) {
  GameService service;
  HttpServer server(service);
  const int port = server.bind("127.0.0.1", 0);
  server.start();
  httplib::Client client("127.0.0.1", port);

  auto created = client.Post("/api/games", R"({"n": 5, "human": 2})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  auto game = nlohmann::json::parse(created->body);
  const std::string id = game["id"];
  EXPECT_EQ(cells(game["moves"]), (std::vector<Position>{{2, 2}}));
  EXPECT_EQ(game["toMove"], 2);
  EXPECT_EQ(game["status"], "in_progress");

  auto moved = client.Post("/api/games/" + id + "/moves", R"({"r": 0, "c": 1})", "application/json");
  ASSERT_TRUE(moved);
  EXPECT_EQ(moved->status, 200);
  game = nlohmann::json::parse(moved->body);
  EXPECT_EQ(cells(game["moves"]).back(), (Position{4, 3}));

  auto illegal = client.Post("/api/games/" + id + "/moves", R"({"r": 0, "c": 3})", "application/json");
  ASSERT_TRUE(illegal);
  EXPECT_EQ(illegal->status, 409);
  const auto err = nlohmann::json::parse(illegal->body);
  EXPECT_EQ(err["error"], "illegal_move");
  EXPECT_EQ(err["constraint"], "row");

  auto bad = client.Post("/api/games/" + id + "/moves", "not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto fetched = client.Get("/api/games/" + id);
  ASSERT_TRUE(fetched);
  EXPECT_EQ(nlohmann::json::parse(fetched->body)["moves"].size(), 3u);

  auto page = client.Get("/");
  ASSERT_TRUE(page);
  EXPECT_EQ(page->status, 200);

  auto removed = client.Delete("/api/games/" + id);
  ASSERT_TRUE(removed);
  EXPECT_EQ(removed->status, 204);
  auto gone = client.Get("/api/games/" + id);
  ASSERT_TRUE(gone);
  EXPECT_EQ(gone->status, 404);
  server.stop();
}

}  // namespace
}  // namespace qpgame
