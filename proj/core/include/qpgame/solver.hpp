#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qpgame/board.hpp"

namespace qpgame {

class AnswerTables;

/// Number of search invocations. 64 bits keep the count exact far beyond the
/// 2.14e15 calls a 31-bit counter scaled by 1e6 could represent.
using CallCount = std::uint64_t;
static_assert(std::numeric_limits<CallCount>::max() >= 2'140'000'000'000'000ULL);

/// Observer for a running search. Every callback is invoked synchronously on
/// the search thread and must not touch the search state.
class ProgressSink {
 public:
  virtual ~ProgressSink() = default;

  /// Called whenever the call counter reaches a multiple of the progress interval.
  virtual void on_calls_milestone(CallCount /*total_calls*/) {}
  /// Called after each first move has been searched. `outcome` is the result
  /// of the position after that move (Player2 means player 2 wins it).
  virtual void on_first_move_result(Position /*first*/, Outcome /*outcome*/, CallCount /*calls*/) {}
  virtual void on_third_move_enter(Position /*first*/, Position /*third*/) {}
  /// `win_digit` is 1 if player 2 wins after the third move, 0 otherwise.
  virtual void on_third_move_exit(int /*win_digit*/) {}
  /// Polled periodically; returning true aborts the search with SearchCancelled.
  virtual bool poll_cancel() { return false; }
};

ProgressSink& null_sink() noexcept;

struct SearchOptions {
  /// Player 1 only considers rows <= half while the board is half-turn symmetric.
  bool use_rotsym_pruning = true;
  /// Skip candidates that already served the opponent as a winning reply.
  bool use_forbidden_pruning = true;
  /// First move restricted to one cell per symmetry class.
  bool use_first_move_canonicalization = true;
  /// For even n <= 8, player 1 opens at (half, half) only.
  bool force_inner_start_even_small = true;
  /// Answers are searched starting in the row after the previous move, wrapping.
  bool use_reply_row_rotation = true;
  /// For odd n, player 1 plays center-then-mirror; only player 2 is searched.
  bool odd_n_strategy_mode = false;
  /// Calls between progress milestones.
  CallCount progress_interval = 1'000'000;
  /// Player 2's first two replies come from these tables when set.
  const AnswerTables* tables = nullptr;
  /// Occupancy representation; defaults to compact for n <= 16.
  std::optional<Representation> representation;
};

struct FirstMoveStat {
  Position first;
  /// Winner of the position after `first` under best play.
  Outcome outcome;
  CallCount calls = 0;

  bool operator==(const FirstMoveStat&) const = default;
};

struct SearchStats {
  CallCount calls = 0;
  std::vector<FirstMoveStat> per_first_move;
  /// Player 1's choices were restricted (forced inner start, mirror strategy).
  bool player1_restricted = false;
  /// Player 2's choices were restricted (answer tables).
  bool player2_restricted = false;
  /// Deepest recursion reached, in placed queens.
  int max_depth = 0;

  bool restricted() const noexcept { return player1_restricted || player2_restricted; }

  bool operator==(const SearchStats&) const = default;
};

struct WinsResult {
  bool wins = false;
  /// A winning move for the side to move when `wins` is true.
  std::optional<Position> winning_move;
};

/// Whether the side to move in `s` has a winning move. The rotational symmetry
/// flag and the previous move are taken from `s`. Increments stats.calls once
/// per recursive invocation.
WinsResult wins(const GameState& s, const SearchOptions& opts, SearchStats& stats,
                ProgressSink& sink = null_sink());

struct SolveResult {
  Outcome outcome;
  SearchStats stats;
};

/// The result would be unsound to report: a restriction on one side may have
/// hidden that side's win.
class InconclusiveError : public std::runtime_error {
 public:
  InconclusiveError(SolveResult partial, const std::string& why)
      : std::runtime_error(why), result_(std::move(partial)) {}
  const SolveResult& result() const noexcept { return result_; }

 private:
  SolveResult result_;
};

/// The progress sink requested cancellation.
class SearchCancelled : public std::runtime_error {
 public:
  explicit SearchCancelled(SearchStats stats)
      : std::runtime_error("search cancelled"), stats_(std::move(stats)) {}
  const SearchStats& stats() const noexcept { return stats_; }

 private:
  SearchStats stats_;
};

/// Solves the n x n game from the empty board.
SolveResult solve(int n, const SearchOptions& opts = {}, ProgressSink& sink = null_sink());

/// Plain unpruned negamax over row-major moves; shares no code with the
/// pruned search. Sizes above 8 require `allow_large`.
Outcome oracle_solve(int n, bool allow_large = false);

/// Oracle value of an arbitrary position: true iff the side to move wins.
bool oracle_wins(std::span<const Position> moves, int n);

}  // namespace qpgame
