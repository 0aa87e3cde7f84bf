#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpgame/occupancy.hpp"
#include "qpgame/types.hpp"

namespace qpgame {

/// Why a cell cannot take a queen: the violated line family and the queen
/// already sitting on it. `occupied` is set when the cell itself holds a queen.
struct Conflict {
  Constraint constraint = Constraint::Row;
  Position queen;
  bool occupied = false;
};

std::string describe(const Conflict& c);

class IllegalMoveError : public std::runtime_error {
 public:
  IllegalMoveError(Position attempted, Conflict conflict);

  Position attempted() const noexcept { return attempted_; }
  const Conflict& conflict() const noexcept { return conflict_; }

 private:
  Position attempted_;
  Conflict conflict_;
};

/// True iff queens on `a` and `b` attack each other.
/// Throws ContractViolation when a == b.
bool attacks(Position a, Position b);

/// Half-turn image (n - 1 - row, n - 1 - col).
inline Position mirror(Position p, Dims d) noexcept {
  return {d.n() - 1 - p.row, d.n() - 1 - p.col};
}

/// The eight symmetries of the square board.
enum class Symmetry : std::uint8_t {
  Identity,
  Rotate90,
  Rotate180,
  Rotate270,
  FlipRows,     // (r, c) -> (n-1-r, c)
  FlipCols,     // (r, c) -> (r, n-1-c)
  Transpose,    // (r, c) -> (c, r)
  AntiTranspose // (r, c) -> (n-1-c, n-1-r)
};

inline constexpr std::array<Symmetry, 8> kAllSymmetries = {
    Symmetry::Identity, Symmetry::Rotate90,  Symmetry::Rotate180, Symmetry::Rotate270,
    Symmetry::FlipRows, Symmetry::FlipCols, Symmetry::Transpose, Symmetry::AntiTranspose};

Position apply(Symmetry s, Position p, Dims d) noexcept;
Symmetry inverse(Symmetry s) noexcept;

/// Canonical first-move region: col <= half and row <= col.
inline bool is_canonical_first(Position p, Dims d) noexcept {
  return in_bounds(p, d) && p.col <= d.half() && p.row <= p.col;
}

/// Row-major list of canonical first moves, one per symmetry class of the
/// empty board.
std::vector<Position> canonical_first_moves(Dims d);

/// A symmetry taking `p` into the canonical first-move region, together with
/// the image. The lowest-numbered symmetry wins when several qualify.
std::pair<Symmetry, Position> canonicalize(Position p, Dims d);

/// Position of an ongoing game: move list plus occupancy and the half-turn
/// symmetry flag. Moves at even indices belong to player 1.
class GameState {
 public:
  explicit GameState(Dims d);
  GameState(Dims d, Representation rep);

  const Dims& dims() const noexcept { return dims_; }
  std::span<const Position> moves() const noexcept { return moves_; }
  const Occupancy& occupancy() const noexcept { return occupancy_; }
  std::size_t move_count() const noexcept { return moves_.size(); }
  std::optional<Position> last_move() const noexcept {
    if (moves_.empty()) return std::nullopt;
    return moves_.back();
  }

  /// True iff every player-2 move so far answered player 1 with its half-turn
  /// image. Only meaningful as a board property when player 1 is to move.
  bool rotsym() const noexcept { return rotsym_; }

  Player to_move() const noexcept { return moves_.size() % 2 == 0 ? Player::One : Player::Two; }

  bool is_available(Position p) const;
  /// The reason `p` is unavailable, or nothing if it is available.
  std::optional<Conflict> conflict_at(Position p) const;

  /// Throws IllegalMoveError if `p` is not available.
  void place(Position p);
  /// Throws ContractViolation on an empty move list.
  void unplace_last();

  std::vector<Position> available_positions() const;
  bool has_available() const;

  bool operator==(const GameState& other) const;

 private:
  void check_bounds(Position p) const;
  bool recompute_rotsym() const noexcept;

  Dims dims_;
  Occupancy occupancy_;
  std::vector<Position> moves_;
  bool rotsym_ = true;
};

/// Returns a copy with `p` placed.
GameState placed(GameState s, Position p);

/// Board diagram: 'Q' queen, '*' unavailable, '.' available; rows top to
/// bottom, cells separated by single spaces, one line per row.
std::string render(const GameState& s, bool show_queens = true);

}  // namespace qpgame
