#include "qpgame/board.hpp"

#include <bit>
#include <sstream>

namespace qpgame {

std::string describe(const Conflict& c) {
  if (c.occupied) return "cell already holds a queen";
  return std::string("shares a ") + to_string(c.constraint) + " with the queen at " +
         to_string(c.queen);
}

IllegalMoveError::IllegalMoveError(Position attempted, Conflict conflict)
    : std::runtime_error("illegal move " + to_string(attempted) + ": " + describe(conflict)),
      attempted_(attempted),
      conflict_(conflict) {}

bool attacks(Position a, Position b) {
  if (a == b) throw ContractViolation("attacks() called with identical positions " + to_string(a));
  return a.row == b.row || a.col == b.col || a.row + a.col == b.row + b.col ||
         a.row - a.col == b.row - b.col;
}

Position apply(Symmetry s, Position p, Dims d) noexcept {
  const int m = d.n() - 1;
  const int r = p.row;
  const int c = p.col;
  switch (s) {
    case Symmetry::Identity: return {r, c};
    case Symmetry::Rotate90: return {c, m - r};
    case Symmetry::Rotate180: return {m - r, m - c};
    case Symmetry::Rotate270: return {m - c, r};
    case Symmetry::FlipRows: return {m - r, c};
    case Symmetry::FlipCols: return {r, m - c};
    case Symmetry::Transpose: return {c, r};
    case Symmetry::AntiTranspose: return {m - c, m - r};
  }
  return p;
}

Symmetry inverse(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::Rotate90: return Symmetry::Rotate270;
    case Symmetry::Rotate270: return Symmetry::Rotate90;
    default: return s;  // the rest are involutions
  }
}

std::vector<Position> canonical_first_moves(Dims d) {
  std::vector<Position> out;
  for (int r = 0; r <= d.half(); ++r) {
    for (int c = r; c <= d.half(); ++c) out.push_back({r, c});
  }
  return out;
}

std::pair<Symmetry, Position> canonicalize(Position p, Dims d) {
  if (!in_bounds(p, d)) throw ContractViolation("position out of range: " + to_string(p));
  for (Symmetry s : kAllSymmetries) {
    const Position q = apply(s, p, d);
    if (is_canonical_first(q, d)) return {s, q};
  }
  throw ContractViolation("no canonical image for " + to_string(p));  // unreachable
}

GameState::GameState(Dims d) : GameState(d, default_representation(d)) {}

GameState::GameState(Dims d, Representation rep) : dims_(d), occupancy_(d, rep) {
  moves_.reserve(static_cast<std::size_t>(d.n()));
}

void GameState::check_bounds(Position p) const {
  if (!in_bounds(p, dims_)) {
    throw ContractViolation("position " + to_string(p) + " outside " + std::to_string(dims_.n()) +
                            "x" + std::to_string(dims_.n()) + " board");
  }
}

bool GameState::is_available(Position p) const {
  check_bounds(p);
  return occupancy_.is_free(p);
}

std::optional<Conflict> GameState::conflict_at(Position p) const {
  check_bounds(p);
  const auto constraint = occupancy_.blocking(p);
  if (!constraint) return std::nullopt;
  for (Position q : moves_) {
    if (q == p) return Conflict{Constraint::Row, q, true};
  }
  for (Position q : moves_) {
    const bool hit = (*constraint == Constraint::Row && q.row == p.row) ||
                     (*constraint == Constraint::Column && q.col == p.col) ||
                     (*constraint == Constraint::FallingDiagonal && q.row + q.col == p.row + p.col) ||
                     (*constraint == Constraint::RisingDiagonal && q.row - q.col == p.row - p.col);
    if (hit) return Conflict{*constraint, q, false};
  }
  throw std::logic_error("occupancy out of sync with move list");
}

void GameState::place(Position p) {
  if (auto conflict = conflict_at(p)) throw IllegalMoveError(p, *conflict);
  occupancy_.set(p);
  moves_.push_back(p);
  if (moves_.size() % 2 == 0) {
    rotsym_ = rotsym_ && p == mirror(moves_[moves_.size() - 2], dims_);
  }
}

void GameState::unplace_last() {
  if (moves_.empty()) throw ContractViolation("unplace_last on an empty board");
  occupancy_.clear(moves_.back());
  moves_.pop_back();
  rotsym_ = recompute_rotsym();
}

bool GameState::recompute_rotsym() const noexcept {
  for (std::size_t k = 1; k < moves_.size(); k += 2) {
    if (moves_[k] != mirror(moves_[k - 1], dims_)) return false;
  }
  return true;
}

std::vector<Position> GameState::available_positions() const {
  std::vector<Position> out;
  for (int r = 0; r < dims_.n(); ++r) {
    for (std::uint32_t bits = occupancy_.free_cols(r); bits != 0; bits &= bits - 1) {
      out.push_back({r, std::countr_zero(bits)});
    }
  }
  return out;
}

bool GameState::has_available() const {
  for (int r = 0; r < dims_.n(); ++r) {
    if (occupancy_.free_cols(r) != 0) return true;
  }
  return false;
}

bool GameState::operator==(const GameState& other) const {
  return dims_ == other.dims_ && moves_ == other.moves_ && rotsym_ == other.rotsym_ &&
         occupancy_.masks() == other.occupancy_.masks();
}

GameState placed(GameState s, Position p) {
  s.place(p);
  return s;
}

std::string render(const GameState& s, bool show_queens) {
  std::ostringstream out;
  const int n = s.dims().n();
  std::vector<bool> queen(static_cast<std::size_t>(n * n), false);
  for (Position q : s.moves()) queen[static_cast<std::size_t>(q.row * n + q.col)] = true;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c > 0) out << ' ';
      if (show_queens && queen[static_cast<std::size_t>(r * n + c)]) {
        out << 'Q';
      } else {
        out << (s.occupancy().is_free({r, c}) ? '.' : '*');
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qpgame
