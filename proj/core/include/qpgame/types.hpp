#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qpgame {

/// Largest supported board side.
inline constexpr int kMaxBoardSize = 32;
/// Largest board side the packed occupancy representation can hold.
inline constexpr int kMaxCompactBoardSize = 16;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Board side length. Always within [1, kMaxBoardSize].
class Dims {
 public:
  explicit Dims(int n) : n_(n) {
    if (n < 1 || n > kMaxBoardSize) {
      throw ContractViolation("board size must be in [1, 32], got " + std::to_string(n));
    }
  }

  int n() const noexcept { return n_; }
  /// (n - 1) div 2: the last row/column of the upper-left half of the board.
  int half() const noexcept { return (n_ - 1) / 2; }
  int cells() const noexcept { return n_ * n_; }

  bool operator==(const Dims&) const = default;

 private:
  int n_;
};

struct Position {
  int row = 0;
  int col = 0;

  auto operator<=>(const Position&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Position p) {
  return os << '(' << p.row << ',' << p.col << ')';
}

inline std::string to_string(Position p) {
  return '(' + std::to_string(p.row) + ',' + std::to_string(p.col) + ')';
}

inline bool in_bounds(Position p, Dims d) noexcept {
  return p.row >= 0 && p.row < d.n() && p.col >= 0 && p.col < d.n();
}

enum class Player : std::uint8_t { One = 1, Two = 2 };

inline Player opponent(Player p) noexcept { return p == Player::One ? Player::Two : Player::One; }

inline int player_number(Player p) noexcept { return static_cast<int>(p); }

/// Game-theoretic result of a position or of a whole game.
struct Outcome {
  Player winner = Player::One;

  bool operator==(const Outcome&) const = default;
};

}  // namespace qpgame
