#include <gtest/gtest.h>

#include "qpgame/solver.hpp"
#include "qpgame/tables.hpp"
#include "test_util.hpp"

namespace qpgame {
namespace {

SearchOptions unrestricted() {
  SearchOptions o;
  o.force_inner_start_even_small = false;
  return o;
}

SearchOptions with_toggles(unsigned mask) {
  SearchOptions o = unrestricted();
  o.use_rotsym_pruning = mask & 1U;
  o.use_forbidden_pruning = mask & 2U;
  o.use_reply_row_rotation = mask & 4U;
  o.use_first_move_canonicalization = mask & 8U;
  return o;
}

// Written against the naive attack test only, so it shares nothing with
// either the library search or its oracle.
bool brute_wins(std::vector<Position>& queens, int n) {
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!testing::naive_free(queens, {r, c})) continue;
      queens.push_back({r, c});
      const bool reply = brute_wins(queens, n);
      queens.pop_back();
      if (!reply) return true;
    }
  }
  return false;
}

TEST(Oracle, SmallBoardsMatchBruteForce) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<Position> empty;
    const Player expected = brute_wins(empty, n) ? Player::One : Player::Two;
    EXPECT_EQ(oracle_solve(n).winner, expected) << n;
  }
}

TEST(Oracle, SizeGuard) {
  EXPECT_THROW(oracle_solve(9), ContractViolation);
}

TEST(Solve, TrivialBoards) {
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(solve(n).outcome.winner, Player::One) << n;
    EXPECT_EQ(oracle_solve(n).winner, Player::One) << n;
  }
  GameState s{Dims(1)};
  SearchStats stats;
  EXPECT_TRUE(wins(s, {}, stats).wins);
  GameState two{Dims(2)};
  EXPECT_TRUE(wins(two, {}, stats).wins);
}

TEST(Solve, AgreesWithOracleForEveryToggleCombination) {
  for (int n = 1; n <= 7; ++n) {
    const Player expected = oracle_solve(n).winner;
    for (unsigned mask = 0; mask < 16; ++mask) {
      EXPECT_EQ(solve(n, with_toggles(mask)).outcome.winner, expected)
          << "n=" << n << " toggles=" << mask;
    }
  }
}

TEST(Solve, WinsAgreesWithOracleOnRandomPositions) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const auto game = testing::random_game(n, rng);
    const std::size_t prefix = rng() % (game.size() + 1);
    GameState s{Dims(n)};
    for (std::size_t i = 0; i < prefix; ++i) s.place(game[i]);
    SearchStats stats;
    const auto r = wins(s, unrestricted(), stats);
    ASSERT_EQ(r.wins, oracle_wins(s.moves(), n));
    if (r.wins) {
      ASSERT_TRUE(r.winning_move.has_value());
      auto child = placed(s, *r.winning_move);
      ASSERT_FALSE(oracle_wins(child.moves(), n));
    }
  }
}

TEST(Solve, KnownOutcomes) {
  EXPECT_EQ(solve(4).outcome.winner, Player::One);
  EXPECT_EQ(solve(6).outcome.winner, Player::One);
  EXPECT_EQ(solve(8).outcome.winner, Player::One);
  EXPECT_EQ(solve(10).outcome.winner, Player::Two);
}

TEST(Solve, OddStrategyModeVerifiesMirrorStrategy) {
  SearchOptions o;
  o.odd_n_strategy_mode = true;
  for (int n : {3, 5, 7, 9}) {
    const auto r = solve(n, o);
    EXPECT_EQ(r.outcome.winner, Player::One) << n;
    EXPECT_TRUE(r.stats.player1_restricted);
    ASSERT_EQ(r.stats.per_first_move.size(), 1u);
    EXPECT_EQ(r.stats.per_first_move[0].first, (Position{n / 2, n / 2}));
  }
}

TEST(Solve, ForcedInnerStartUsesOneFirstMove) {
  const auto r = solve(6);
  EXPECT_TRUE(r.stats.player1_restricted);
  ASSERT_EQ(r.stats.per_first_move.size(), 1u);
  EXPECT_EQ(r.stats.per_first_move[0].first, (Position{2, 2}));
  EXPECT_EQ(r.stats.per_first_move[0].outcome.winner, Player::One);
}

// Tables that answer with the first free cell in row-major order: legal, but
// not winning, so player 2 is restricted to moves that lose.
AnswerTables naive_tables(int n) {
  const Dims d(n);
  AnswerTables t(d);
  for (Position first : canonical_first_moves(d)) {
    GameState s(d);
    s.place(first);
    const Position reply = s.available_positions().front();
    t.set_t(first, encode(reply));
    s.place(reply);
    const auto b = t.add_b_table();
    t.set_a(first, static_cast<std::uint8_t>(b));
    for (Position third : s.available_positions()) {
      const auto rest = placed(s, third).available_positions();
      if (!rest.empty()) t.set_b(b, third, encode(rest.front()));
    }
  }
  return t;
}

TEST(Solve, InconclusiveWhenTablesRestrictPlayer2) {
  const AnswerTables tables = naive_tables(6);
  SearchOptions o;
  o.tables = &tables;
  try {
    solve(6, o);
    FAIL() << "expected InconclusiveError";
  } catch (const InconclusiveError& e) {
    EXPECT_EQ(e.result().outcome.winner, Player::One);
    EXPECT_TRUE(e.result().stats.player2_restricted);
  }
}

TEST(Solve, ForbiddenPruningNeverAddsCalls) {
  for (int n = 4; n <= 8; ++n) {
    for (bool inner : {false, true}) {
      SearchOptions on;
      on.force_inner_start_even_small = inner;
      SearchOptions off = on;
      off.use_forbidden_pruning = false;
      EXPECT_LE(solve(n, on).stats.calls, solve(n, off).stats.calls) << n;
    }
  }
}

TEST(Solve, CallCountsNearReferenceProgram) {
  const CallCount six = solve(6).stats.calls;
  const CallCount eight = solve(8).stats.calls;
  EXPECT_GE(six * 100, 54u);
  EXPECT_LE(six, 54u * 100);
  EXPECT_GE(eight * 100, 2266u);
  EXPECT_LE(eight, 2266u * 100);
}

TEST(Solve, Deterministic) {
  for (int n : {5, 6, 7, 8, 9}) {
    const auto a = solve(n);
    const auto b = solve(n);
    EXPECT_EQ(a.stats, b.stats);
    EXPECT_EQ(a.outcome, b.outcome);
  }
}

TEST(Solve, RepresentationsGiveIdenticalStats) {
  for (int n : {6, 7, 8, 9}) {
    SearchOptions compact;
    compact.representation = Representation::Compact;
    SearchOptions general;
    general.representation = Representation::General;
    EXPECT_EQ(solve(n, compact).stats, solve(n, general).stats) << n;
  }
}

TEST(Solve, DepthNeverExceedsBoardSize) {
  for (int n = 1; n <= 9; ++n) {
    EXPECT_LE(solve(n, unrestricted()).stats.max_depth, n);
  }
}

TEST(Solve, FirstMoveStatsSumToTotal) {
  const auto r = solve(10);
  CallCount sum = 1;  // the root invocation
  for (const auto& f : r.stats.per_first_move) sum += f.calls;
  EXPECT_EQ(sum, r.stats.calls);
  // Root candidates that already refuted a sibling are skipped by forbidden pruning.
  EXPECT_LE(r.stats.per_first_move.size(), canonical_first_moves(Dims(10)).size());
  for (const auto& f : r.stats.per_first_move) EXPECT_TRUE(is_canonical_first(f.first, Dims(10)));
  SearchOptions no_forbidden;
  no_forbidden.use_forbidden_pruning = false;
  EXPECT_EQ(solve(10, no_forbidden).stats.per_first_move.size(),
            canonical_first_moves(Dims(10)).size());
}

struct RecordingSink : ProgressSink {
  std::vector<CallCount> milestones;
  std::vector<Position> firsts;
  int third_enters = 0;
  int third_exits = 0;
  CallCount cancel_after = 0;
  CallCount polls = 0;
  void on_calls_milestone(CallCount total) override { milestones.push_back(total); }
  void on_first_move_result(Position p, Outcome, CallCount) override { firsts.push_back(p); }
  void on_third_move_enter(Position, Position) override { ++third_enters; }
  void on_third_move_exit(int) override { ++third_exits; }
  bool poll_cancel() override { return cancel_after != 0 && ++polls >= cancel_after; }
};

TEST(Solve, ProgressMilestonesAtEveryInterval) {
  SearchOptions o;
  o.progress_interval = 1000;
  RecordingSink sink;
  const auto r = solve(8, o, sink);
  ASSERT_EQ(sink.milestones.size(), r.stats.calls / 1000);
  for (std::size_t i = 0; i < sink.milestones.size(); ++i) {
    EXPECT_EQ(sink.milestones[i], (i + 1) * 1000);
  }
  EXPECT_EQ(sink.firsts, (std::vector<Position>{{3, 3}}));
  EXPECT_EQ(sink.third_enters, sink.third_exits);
  EXPECT_GT(sink.third_enters, 0);
}

TEST(Solve, CancellationStopsSearch) {
  RecordingSink sink;
  sink.cancel_after = 1;
  try {
    solve(12, {}, sink);
    FAIL() << "expected SearchCancelled";
  } catch (const SearchCancelled& e) {
    EXPECT_GT(e.stats().calls, 0u);
    EXPECT_LT(e.stats().calls, 1'000'000u);
  }
}

}  // namespace
}  // namespace qpgame
