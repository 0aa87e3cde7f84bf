#include "qpgame/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <type_traits>
#include <utility>

#include "qpgame/tables.hpp"

namespace qpgame {

ProgressSink& null_sink() noexcept {
  static ProgressSink sink;
  return sink;
}

namespace {

constexpr CallCount kPollInterval = CallCount{1} << 16;

using Forbidden = std::array<std::uint32_t, kMaxBoardSize>;

template <class Occ>
class Searcher {
 public:
  Searcher(const GameState& s, const Occ& occ, const SearchOptions& opts, SearchStats& stats,
           ProgressSink& sink)
      : dims_(s.dims()),
        n_(s.dims().n()),
        half_(s.dims().half()),
        strategy_mode_(opts.odd_n_strategy_mode && s.dims().n() % 2 == 1),
        occ_(occ),
        opts_(opts),
        stats_(stats),
        sink_(sink) {
    for (Position p : s.moves()) moves_[static_cast<std::size_t>(depth_++)] = p;
    until_milestone_ = opts.progress_interval - stats.calls % opts.progress_interval;
  }

  WinsResult run(bool rotsym) {
    Position reply;
    const bool won = wins(rotsym, &reply);
    return {won, won ? std::optional<Position>(reply) : std::nullopt};
  }

 private:
  void count_call() {
    ++stats_.calls;
    if (--until_milestone_ == 0) {
      until_milestone_ = opts_.progress_interval;
      sink_.on_calls_milestone(stats_.calls);
    }
    if (--until_poll_ == 0) {
      until_poll_ = kPollInterval;
      if (sink_.poll_cancel()) throw SearchCancelled(stats_);
    }
  }

  bool any_free() const {
    for (int r = 0; r < n_; ++r) {
      if (occ_.free_cols(r) != 0) return true;
    }
    return false;
  }

  Position move(int k) const { return moves_[static_cast<std::size_t>(k)]; }

  bool wins(bool rotsym, Position* reply) {
    count_call();
    const int k = depth_;
    assert(k <= n_);
    stats_.max_depth = std::max(stats_.max_depth, k);
    const bool player1 = k % 2 == 0;
    Forbidden forbidden{};

    if (player1 && strategy_mode_) {
      stats_.player1_restricted = true;
      const Position m = k == 0 ? Position{half_, half_} : mirror(move(k - 1), dims_);
      if (!occ_.is_free(m)) {
        if (!any_free()) return false;
        throw std::logic_error("mirror strategy reply " + to_string(m) + " is not available");
      }
      return explore(m, rotsym, forbidden, reply);
    }
    if (!player1 && opts_.tables != nullptr && (k == 1 || k == 3)) {
      if (!any_free()) return false;
      stats_.player2_restricted = true;
      const Position m = k == 1 ? lookup_round1_any(*opts_.tables, move(0))
                                : lookup_round2_any(*opts_.tables, move(0), move(2));
      if (!in_bounds(m, dims_) || !occ_.is_free(m)) {
        throw TableError(TableError::Kind::Format,
                         "table reply " + to_string(m) + " is not a legal move");
      }
      return explore(m, rotsym, forbidden, reply);
    }
    if (k == 0) return root(rotsym, forbidden, reply);
    return scan(k, rotsym, forbidden, reply);
  }

  bool root(bool rotsym, Forbidden& forbidden, Position* reply) {
    if (opts_.force_inner_start_even_small && n_ % 2 == 0 && n_ <= 8) {
      stats_.player1_restricted = true;
      return explore({half_, half_}, rotsym, forbidden, reply);
    }
    if (!opts_.use_first_move_canonicalization) return scan(0, rotsym, forbidden, reply);

    // With tables, a first move whose {move, reply} pair was already searched
    // from the other side leads to the same position and is skipped.
    std::vector<std::pair<Position, Position>> searched_pairs;
    for (Position p : canonical_first_moves(dims_)) {
      if ((forbidden[static_cast<std::size_t>(p.row)] >> p.col) & 1U) continue;
      if (opts_.tables != nullptr) {
        const Position q = lookup_round1(*opts_.tables, p);
        const std::pair<Position, Position> pair = p < q ? std::pair{p, q} : std::pair{q, p};
        if (std::find(searched_pairs.begin(), searched_pairs.end(), pair) != searched_pairs.end()) {
          continue;
        }
        searched_pairs.emplace_back(pair);
      }
      if (explore(p, rotsym, forbidden, reply)) return true;
    }
    return false;
  }

  bool scan(int k, bool rotsym, Forbidden& forbidden, Position* reply) {
    const bool player1 = k % 2 == 0;
    const bool upper_rows_only = player1 && rotsym && opts_.use_rotsym_pruning;
    // the second move of a game is searched from row 0
    const int start = opts_.use_reply_row_rotation && k >= 2 ? (move(k - 1).row + 1) % n_ : 0;
    for (int i = 0; i < n_; ++i) {
      const int r = (start + i) % n_;
      if (upper_rows_only && r > half_) continue;
      const auto row = static_cast<std::size_t>(r);
      std::uint32_t cols = occ_.free_cols(r) & ~forbidden[row];
      while (cols != 0) {
        const int c = std::countr_zero(cols);
        cols &= cols - 1;
        if (explore({r, c}, rotsym, forbidden, reply)) return true;
        cols &= ~forbidden[row];
      }
    }
    return false;
  }

  // Plays p, searches the opponent's answer, and undoes p. True iff p wins.
  bool explore(Position p, bool rotsym, Forbidden& forbidden, Position* reply) {
    const int k = depth_;
    const bool child_rotsym = k % 2 == 1 ? rotsym && p == mirror(move(k - 1), dims_) : rotsym;
    occ_.set(p);
    moves_[static_cast<std::size_t>(depth_++)] = p;
    const CallCount before = stats_.calls;
    if (k == 2) sink_.on_third_move_enter(move(0), p);

    Position answer;
    const bool opponent_wins = wins(child_rotsym, &answer);

    --depth_;
    occ_.clear(p);
    if (k == 2) sink_.on_third_move_exit(opponent_wins ? 1 : 0);
    if (k == 0) {
      const FirstMoveStat stat{p, Outcome{opponent_wins ? Player::Two : Player::One},
                               stats_.calls - before};
      stats_.per_first_move.push_back(stat);
      sink_.on_first_move_result(stat.first, stat.outcome, stat.calls);
    }
    if (!opponent_wins) {
      *reply = p;
      return true;
    }
    if (opts_.use_forbidden_pruning) {
      forbidden[static_cast<std::size_t>(answer.row)] |= std::uint32_t{1} << answer.col;
    }
    return false;
  }

  Dims dims_;
  int n_;
  int half_;
  bool strategy_mode_;
  Occ occ_;
  const SearchOptions& opts_;
  SearchStats& stats_;
  ProgressSink& sink_;
  std::array<Position, kMaxBoardSize + 1> moves_{};
  int depth_ = 0;
  CallCount until_milestone_ = 0;
  CallCount until_poll_ = kPollInterval;
};

void check_options(const GameState& s, const SearchOptions& opts) {
  if (opts.progress_interval < 1) throw ContractViolation("progress_interval must be >= 1");
  if (opts.tables != nullptr && opts.tables->dims() != s.dims()) {
    throw ContractViolation("answer tables are for n = " + std::to_string(opts.tables->dims().n()) +
                            ", board has n = " + std::to_string(s.dims().n()));
  }
}

// Oracle: nothing but the game rules, checked pairwise.
bool oracle_free(const std::vector<Position>& queens, Position p) {
  for (Position q : queens) {
    if (q == p || attacks(q, p)) return false;
  }
  return true;
}

bool oracle_negamax(int n, std::vector<Position>& queens) {
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Position p{r, c};
      if (!oracle_free(queens, p)) continue;
      queens.push_back(p);
      const bool opponent_wins = oracle_negamax(n, queens);
      queens.pop_back();
      if (!opponent_wins) return true;
    }
  }
  return false;
}

}  // namespace

WinsResult wins(const GameState& s, const SearchOptions& opts, SearchStats& stats,
                ProgressSink& sink) {
  check_options(s, opts);
  return s.occupancy().visit([&](const auto& occ) {
    Searcher<std::decay_t<decltype(occ)>> search(s, occ, opts, stats, sink);
    return search.run(s.rotsym());
  });
}

SolveResult solve(int n, const SearchOptions& opts, ProgressSink& sink) {
  const Dims d(n);
  const GameState empty(d, opts.representation.value_or(default_representation(d)));
  SolveResult result;
  const WinsResult w = wins(empty, opts, result.stats, sink);
  result.outcome.winner = w.wins ? Player::One : Player::Two;
  if (!w.wins && result.stats.player1_restricted) {
    throw InconclusiveError(result, "player 1 found no win, but player 1's moves were restricted");
  }
  if (w.wins && result.stats.player2_restricted) {
    throw InconclusiveError(result, "player 1 won, but player 2's replies were restricted");
  }
  return result;
}

Outcome oracle_solve(int n, bool allow_large) {
  const Dims d(n);
  if (n > 8 && !allow_large) {
    throw ContractViolation("oracle_solve is limited to n <= 8 unless allow_large is set");
  }
  std::vector<Position> queens;
  queens.reserve(static_cast<std::size_t>(d.n()));
  return Outcome{oracle_negamax(d.n(), queens) ? Player::One : Player::Two};
}

bool oracle_wins(std::span<const Position> moves, int n) {
  const Dims d(n);
  std::vector<Position> queens(moves.begin(), moves.end());
  return oracle_negamax(d.n(), queens);
}

}  // namespace qpgame
