#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qpgame/board.hpp"
#include "qpgame/solver.hpp"

namespace qpgame {

enum class StrategyKind {
  /// Player 1 on odd n: center, then the half-turn image of every reply.
  MirrorOdd,
  /// Player 1 on n = 4: an inner cell, then the single cell left.
  InnerFour,
  /// Player 2: answer-table replies for the first two rounds, search afterwards.
  TableReplies,
  /// Either side: first winning move found by exhaustive search.
  PerfectSearch,
};

std::string_view to_string(StrategyKind k) noexcept;
/// Accepts "mirror-odd", "inner-four", "table" and "perfect".
std::optional<StrategyKind> parse_strategy(std::string_view name) noexcept;

/// The side a strategy plays by default.
Player natural_side(StrategyKind k) noexcept;

class StrategyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StrategyContext {
  /// Required by TableReplies.
  const AnswerTables* tables = nullptr;
  /// Options for every search a strategy runs.
  SearchOptions search = [] {
    SearchOptions o;
    o.force_inner_start_even_small = false;
    return o;
  }();
  /// PerfectSearch gives up at this point and plays its best-known move.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Throws StrategyError if `kind` cannot play on this board size.
void check_applicable(StrategyKind kind, Dims d, const StrategyContext& ctx = {});

struct MoveChoice {
  std::optional<Position> move;
  /// False when a deadline cut the search short and the move is a fallback.
  bool exact = true;
};

/// Move chosen by `kind` for the side to move; nothing when the board is full.
/// Throws StrategyError on the wrong turn, wrong board size or a position the
/// strategy cannot reach, and TableError when a table path is invalid.
std::optional<Position> next_move(StrategyKind kind, const GameState& s,
                                  const StrategyContext& ctx = {});

/// next_move with the deadline outcome exposed.
MoveChoice choose_move(StrategyKind kind, const GameState& s, const StrategyContext& ctx = {});

/// First winning move in row-major order, else the first available move.
MoveChoice perfect_move(const GameState& s, const StrategyContext& ctx = {});

using MoveSource = std::function<Position(const GameState&)>;

/// Uniformly random legal moves.
MoveSource random_adversary(std::uint64_t seed);

struct PlayoutResult {
  Player winner = Player::One;
  std::vector<Position> transcript;
};

/// The adversary played an illegal move.
class PlayoutError : public IllegalMoveError {
 public:
  PlayoutError(const IllegalMoveError& cause, std::vector<Position> transcript)
      : IllegalMoveError(cause), transcript_(std::move(transcript)) {}
  const std::vector<Position>& transcript() const noexcept { return transcript_; }

 private:
  std::vector<Position> transcript_;
};

/// Plays `kind` (on `side`, default natural_side) against `adversary` until no
/// move remains. The last player to move wins.
PlayoutResult playout(StrategyKind kind, const MoveSource& adversary, int n,
                      const StrategyContext& ctx = {}, std::optional<Player> side = {});

/// One move per line: "<k>: (<r>,<c>)" with k counted from 1.
std::string format_transcript(std::span<const Position> moves);

}  // namespace qpgame
