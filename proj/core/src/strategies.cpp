#include "qpgame/strategies.hpp"

#include <sstream>

#include "qpgame/tables.hpp"

namespace qpgame {

std::string_view to_string(StrategyKind k) noexcept {
  switch (k) {
    case StrategyKind::MirrorOdd: return "mirror-odd";
    case StrategyKind::InnerFour: return "inner-four";
    case StrategyKind::TableReplies: return "table";
    case StrategyKind::PerfectSearch: return "perfect";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) noexcept {
  for (StrategyKind k : {StrategyKind::MirrorOdd, StrategyKind::InnerFour,
                         StrategyKind::TableReplies, StrategyKind::PerfectSearch}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Player natural_side(StrategyKind k) noexcept {
  return k == StrategyKind::TableReplies ? Player::Two : Player::One;
}

void check_applicable(StrategyKind kind, Dims d, const StrategyContext& ctx) {
  switch (kind) {
    case StrategyKind::MirrorOdd:
      if (d.n() % 2 == 0) throw StrategyError("mirror-odd needs an odd board size");
      break;
    case StrategyKind::InnerFour:
      if (d.n() != 4) throw StrategyError("inner-four needs n = 4");
      break;
    case StrategyKind::TableReplies:
      if (ctx.tables == nullptr) throw StrategyError("table strategy needs loaded answer tables");
      if (ctx.tables->dims() != d) {
        throw StrategyError("answer tables are for n = " + std::to_string(ctx.tables->dims().n()));
      }
      break;
    case StrategyKind::PerfectSearch:
      break;
  }
}

namespace {

class DeadlineSink final : public ProgressSink {
 public:
  explicit DeadlineSink(std::chrono::steady_clock::time_point deadline) : deadline_(deadline) {}
  bool poll_cancel() override { return std::chrono::steady_clock::now() >= deadline_; }

 private:
  std::chrono::steady_clock::time_point deadline_;
};

void require_turn(StrategyKind kind, const GameState& s, Player expected) {
  if (s.to_move() != expected) {
    throw StrategyError(std::string(to_string(kind)) + " plays player " +
                        std::to_string(player_number(expected)) + ", but player " +
                        std::to_string(player_number(s.to_move())) + " is to move");
  }
}

Position mirror_odd_move(const GameState& s) {
  const Dims d = s.dims();
  const Position center{d.half(), d.half()};
  if (s.move_count() == 0) return center;
  if (s.moves()[0] != center) throw StrategyError("mirror-odd: first queen is not at the center");
  const Position reply = mirror(*s.last_move(), d);
  if (!s.is_available(reply)) {
    throw StrategyError("mirror-odd: " + to_string(reply) + " is unavailable; position unreachable");
  }
  return reply;
}

Position inner_four_move(const GameState& s) {
  static constexpr Position kInner{1, 1};
  if (s.move_count() == 0) return kInner;
  if (s.move_count() != 2 || s.moves()[0] != kInner) {
    throw StrategyError("inner-four: position unreachable under the strategy");
  }
  const auto open = s.available_positions();
  if (open.size() != 1) {
    throw StrategyError("inner-four: expected exactly one available cell, found " +
                        std::to_string(open.size()));
  }
  return open.front();
}

}  // namespace

MoveChoice perfect_move(const GameState& s, const StrategyContext& ctx) {
  const auto open = s.available_positions();
  if (open.empty()) return {};

  SearchOptions opts = ctx.search;
  opts.tables = nullptr;
  opts.odd_n_strategy_mode = false;
  std::optional<DeadlineSink> deadline;
  if (ctx.deadline) deadline.emplace(*ctx.deadline);
  ProgressSink& sink = deadline ? static_cast<ProgressSink&>(*deadline) : null_sink();

  GameState next = s;
  for (Position p : open) {
    next.place(p);
    SearchStats stats;
    try {
      if (!wins(next, opts, stats, sink).wins) return {p, true};
    } catch (const SearchCancelled&) {
      return {open.front(), false};
    }
    next.unplace_last();
  }
  return {open.front(), true};
}

MoveChoice choose_move(StrategyKind kind, const GameState& s, const StrategyContext& ctx) {
  check_applicable(kind, s.dims(), ctx);
  if (!s.has_available()) return {};
  switch (kind) {
    case StrategyKind::MirrorOdd:
      require_turn(kind, s, Player::One);
      return {mirror_odd_move(s), true};
    case StrategyKind::InnerFour:
      require_turn(kind, s, Player::One);
      return {inner_four_move(s), true};
    case StrategyKind::TableReplies: {
      require_turn(kind, s, Player::Two);
      std::optional<Position> reply;
      if (s.move_count() == 1) {
        reply = lookup_round1_any(*ctx.tables, s.moves()[0]);
      } else if (s.move_count() == 3) {
        reply = lookup_round2_any(*ctx.tables, s.moves()[0], s.moves()[2]);
      } else {
        return perfect_move(s, ctx);
      }
      if (!in_bounds(*reply, s.dims()) || !s.is_available(*reply)) {
        throw TableError(TableError::Kind::Format,
                         "table reply " + to_string(*reply) + " is not a legal move");
      }
      return {reply, true};
    }
    case StrategyKind::PerfectSearch:
      return perfect_move(s, ctx);
  }
  return {};
}

std::optional<Position> next_move(StrategyKind kind, const GameState& s,
                                  const StrategyContext& ctx) {
  return choose_move(kind, s, ctx).move;
}

MoveSource random_adversary(std::uint64_t seed) {
  return [rng = std::mt19937_64(seed)](const GameState& s) mutable {
    const auto open = s.available_positions();
    if (open.empty()) throw ContractViolation("random adversary asked to move on a full board");
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    return open[pick(rng)];
  };
}

PlayoutResult playout(StrategyKind kind, const MoveSource& adversary, int n,
                      const StrategyContext& ctx, std::optional<Player> side) {
  const Dims d(n);
  check_applicable(kind, d, ctx);
  const Player strategy_side = side.value_or(natural_side(kind));

  GameState s(d);
  while (s.has_available()) {
    if (s.to_move() == strategy_side) {
      // a strategy move that fails to place is a bug, not an adversary error
      s.place(*next_move(kind, s, ctx));
      continue;
    }
    const Position p = adversary(s);
    try {
      s.place(p);
    } catch (const IllegalMoveError& e) {
      throw PlayoutError(e, {s.moves().begin(), s.moves().end()});
    }
  }
  PlayoutResult result;
  result.winner = s.move_count() % 2 == 1 ? Player::One : Player::Two;
  result.transcript.assign(s.moves().begin(), s.moves().end());
  return result;
}

std::string format_transcript(std::span<const Position> moves) {
  std::ostringstream out;
  for (std::size_t k = 0; k < moves.size(); ++k) out << k + 1 << ": " << moves[k] << '\n';
  return out.str();
}

}  // namespace qpgame
