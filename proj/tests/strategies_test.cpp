#include <gtest/gtest.h>

#include "qpgame/strategies.hpp"
#include "qpgame/tables.hpp"
#include "test_util.hpp"

namespace qpgame {
namespace {

TEST(Names, ParseAndPrint) {
  for (auto k : {StrategyKind::MirrorOdd, StrategyKind::InnerFour, StrategyKind::TableReplies,
                 StrategyKind::PerfectSearch}) {
    EXPECT_EQ(parse_strategy(to_string(k)), k);
  }
  EXPECT_FALSE(parse_strategy("mirror").has_value());
  EXPECT_EQ(natural_side(StrategyKind::TableReplies), Player::Two);
  EXPECT_EQ(natural_side(StrategyKind::MirrorOdd), Player::One);
}

TEST(MirrorOdd, OpensCenterThenMirrors) {
  GameState s{Dims(5)};
  EXPECT_EQ(next_move(StrategyKind::MirrorOdd, s), (Position{2, 2}));
  s.place({2, 2});
  s.place({0, 1});
  EXPECT_EQ(next_move(StrategyKind::MirrorOdd, s), (Position{4, 3}));
}

TEST(MirrorOdd, RejectsEvenBoardsAndWrongTurn) {
  EXPECT_THROW(check_applicable(StrategyKind::MirrorOdd, Dims(4)), StrategyError);
  GameState s{Dims(5)};
  s.place({2, 2});
  EXPECT_THROW(next_move(StrategyKind::MirrorOdd, s), StrategyError);
}

TEST(MirrorOdd, BeatsRandomAdversaries) {
  for (int n : {3, 5, 7, 9, 11, 13}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto r = playout(StrategyKind::MirrorOdd, random_adversary(seed * 31 + n), n);
      ASSERT_EQ(r.winner, Player::One) << "n=" << n << " seed=" << seed;
      // Re-check the transcript with the naive attack test.
      for (std::size_t i = 0; i < r.transcript.size(); ++i) {
        std::vector<Position> before(r.transcript.begin(), r.transcript.begin() + i);
        ASSERT_TRUE(testing::naive_free(before, r.transcript[i]));
      }
      ASSERT_TRUE(testing::naive_available(r.transcript, n).empty());
    }
  }
}

TEST(InnerFour, EveryReplyLeavesOneCell) {
  GameState s{Dims(4)};
  const Position open = *next_move(StrategyKind::InnerFour, s);
  EXPECT_TRUE(open.row >= 1 && open.row <= 2 && open.col >= 1 && open.col <= 2);
  s.place({1, 1});
  const auto replies = testing::naive_available({{1, 1}}, 4);
  ASSERT_EQ(replies.size(), 4u);
  for (Position reply : replies) {
    auto after = placed(s, reply);
    const auto left = testing::naive_available({{1, 1}, reply}, 4);
    ASSERT_EQ(left.size(), 1u) << reply;
    EXPECT_EQ(next_move(StrategyKind::InnerFour, after), left[0]);
  }
  EXPECT_EQ(next_move(StrategyKind::InnerFour, placed(s, {0, 3})), (Position{3, 2}));
}

TEST(InnerFour, WinsAllGames) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(playout(StrategyKind::InnerFour, random_adversary(seed), 4).winner, Player::One);
  }
  EXPECT_THROW(check_applicable(StrategyKind::InnerFour, Dims(6)), StrategyError);
}

TEST(Perfect, MatchesOracleValue) {
  for (int n = 1; n <= 6; ++n) {
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < 40; ++trial) {
      const auto game = testing::random_game(n, rng);
      const std::size_t prefix = rng() % game.size();
      GameState s{Dims(n)};
      for (std::size_t i = 0; i < prefix; ++i) s.place(game[i]);
      const auto choice = perfect_move(s);
      ASSERT_TRUE(choice.move.has_value());
      EXPECT_TRUE(choice.exact);
      const bool side_wins = oracle_wins(s.moves(), n);
      const bool after = oracle_wins(placed(s, *choice.move).moves(), n);
      EXPECT_EQ(side_wins, !after);
    }
  }
}

TEST(Perfect, WinsAsTheWinningSide) {
  for (int n : {4, 5, 6}) {
    const auto r = playout(StrategyKind::PerfectSearch, random_adversary(n), n);
    EXPECT_EQ(r.winner, Player::One) << n;
  }
  const auto ten = playout(StrategyKind::PerfectSearch, random_adversary(9), 10, {}, Player::Two);
  EXPECT_EQ(ten.winner, Player::Two);
}

TEST(Perfect, ExpiredDeadlineFallsBack) {
  StrategyContext ctx;
  ctx.deadline = std::chrono::steady_clock::now();
  GameState s{Dims(14)};
  const auto choice = perfect_move(s, ctx);
  ASSERT_TRUE(choice.move.has_value());
  EXPECT_FALSE(choice.exact);
  EXPECT_TRUE(s.is_available(*choice.move));
}

TEST(Tables, TableStrategyWinsTen) {
  const auto tables = generate_tables(10);
  StrategyContext ctx;
  ctx.tables = &tables;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = playout(StrategyKind::TableReplies, random_adversary(seed), 10, ctx);
    EXPECT_EQ(r.winner, Player::Two) << seed;
  }
  EXPECT_THROW(check_applicable(StrategyKind::TableReplies, Dims(10)), StrategyError);
  EXPECT_THROW(check_applicable(StrategyKind::TableReplies, Dims(12), ctx), StrategyError);
}

TEST(Playout, IllegalAdversaryMoveCarriesTranscript) {
  MoveSource cheat = [](const GameState& s) { return s.moves().empty() ? Position{0, 0} : s.moves().back(); };
  try {
    playout(StrategyKind::MirrorOdd, cheat, 5);
    FAIL();
  } catch (const PlayoutError& e) {
    EXPECT_EQ(e.transcript(), (std::vector<Position>{{2, 2}}));
    EXPECT_EQ(e.attempted(), (Position{2, 2}));
    EXPECT_TRUE(e.conflict().occupied);
  }
}

TEST(Transcript, Format) {
  const std::vector<Position> moves{{2, 2}, {0, 1}, {4, 3}};
  EXPECT_EQ(format_transcript(moves), "1: (2,2)\n2: (0,1)\n3: (4,3)\n");
}

}  // namespace
}  // namespace qpgame
