#pragma once

#include <bit>
#include <bitset>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>

#include "qpgame/types.hpp"

namespace qpgame {

/// The four line families a queen controls.
enum class Constraint : std::uint8_t { Row, Column, FallingDiagonal, RisingDiagonal };

const char* to_string(Constraint c) noexcept;

/// Occupancy masks in their canonical indexing: rows and columns by number,
/// falling diagonals by row + col, rising diagonals by row - col + (n - 1).
struct OccupancyMasks {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint64_t falling = 0;
  std::uint64_t rising = 0;

  bool operator==(const OccupancyMasks&) const = default;
};

enum class Representation : std::uint8_t { Compact, General };

inline Representation default_representation(Dims d) noexcept {
  return d.n() <= kMaxCompactBoardSize ? Representation::Compact : Representation::General;
}

inline std::uint32_t low_bits(int count) noexcept {
  return count >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << count) - 1;
}

/// Packed bit-pattern occupancy for n <= 16: rows and columns share one word,
/// both diagonal families share another. Rising diagonals are stored with the
/// column-major index col - row + (n - 1) so a row's free columns are a pair of
/// shifts away.
class CompactOccupancy {
 public:
  explicit CompactOccupancy(Dims d);

  int n() const noexcept { return n_; }

  bool row_used(int row) const noexcept { return (lines_ >> row) & 1U; }

  /// Bit c set iff (row, c) is available.
  std::uint32_t free_cols(int row) const noexcept {
    if (row_used(row)) return 0;
    const std::uint32_t full = low_bits(n_);
    const auto cols = static_cast<std::uint32_t>(lines_ >> 16);
    const auto falling = static_cast<std::uint32_t>(diags_ >> row);
    const auto rising = static_cast<std::uint32_t>(diags_ >> (32 + n_ - 1 - row));
    return full & ~(cols | falling | rising);
  }

  bool is_free(Position p) const noexcept { return (free_cols(p.row) >> p.col) & 1U; }

  std::optional<Constraint> blocking(Position p) const noexcept;

  void set(Position p) noexcept {
    lines_ |= line_bits(p);
    diags_ |= bits_for(p);
  }
  void clear(Position p) noexcept {
    lines_ &= ~line_bits(p);
    diags_ &= ~bits_for(p);
  }

  OccupancyMasks masks() const noexcept;

 private:
  std::uint32_t line_bits(Position p) const noexcept {
    return (std::uint32_t{1} << p.row) | (std::uint32_t{1} << (16 + p.col));
  }
  std::uint64_t bits_for(Position p) const noexcept {
    return (std::uint64_t{1} << (p.row + p.col)) |
           (std::uint64_t{1} << (32 + p.col - p.row + n_ - 1));
  }

  int n_;
  std::uint32_t lines_ = 0;
  std::uint64_t diags_ = 0;
};

/// Plain per-family bit sets, valid up to n = 32.
class GeneralOccupancy {
 public:
  explicit GeneralOccupancy(Dims d) : n_(d.n()) {}

  int n() const noexcept { return n_; }

  bool row_used(int row) const noexcept { return rows_.test(static_cast<std::size_t>(row)); }

  bool is_free(Position p) const noexcept { return !blocking(p).has_value(); }

  std::uint32_t free_cols(int row) const noexcept {
    std::uint32_t out = 0;
    if (row_used(row)) return out;
    for (int c = 0; c < n_; ++c) {
      if (is_free({row, c})) out |= std::uint32_t{1} << c;
    }
    return out;
  }

  std::optional<Constraint> blocking(Position p) const noexcept;

  void set(Position p) noexcept { assign(p, true); }
  void clear(Position p) noexcept { assign(p, false); }

  OccupancyMasks masks() const noexcept;

 private:
  void assign(Position p, bool value) noexcept;

  int n_;
  std::bitset<kMaxBoardSize> rows_;
  std::bitset<kMaxBoardSize> cols_;
  std::bitset<2 * kMaxBoardSize - 1> falling_;
  std::bitset<2 * kMaxBoardSize - 1> rising_;
};

/// Occupancy with a representation chosen at construction. Both
/// representations answer every query identically.
class Occupancy {
 public:
  Occupancy(Dims d, Representation rep);

  Representation representation() const noexcept {
    return std::holds_alternative<CompactOccupancy>(impl_) ? Representation::Compact
                                                           : Representation::General;
  }

  bool is_free(Position p) const noexcept {
    return std::visit([p](const auto& o) { return o.is_free(p); }, impl_);
  }
  std::uint32_t free_cols(int row) const noexcept {
    return std::visit([row](const auto& o) { return o.free_cols(row); }, impl_);
  }
  std::optional<Constraint> blocking(Position p) const noexcept {
    return std::visit([p](const auto& o) { return o.blocking(p); }, impl_);
  }
  void set(Position p) noexcept {
    std::visit([p](auto& o) { o.set(p); }, impl_);
  }
  void clear(Position p) noexcept {
    std::visit([p](auto& o) { o.clear(p); }, impl_);
  }
  OccupancyMasks masks() const noexcept {
    return std::visit([](const auto& o) { return o.masks(); }, impl_);
  }

  /// Gives the search direct access to the concrete representation.
  template <class Visitor>
  decltype(auto) visit(Visitor&& v) const {
    return std::visit(std::forward<Visitor>(v), impl_);
  }

 private:
  std::variant<CompactOccupancy, GeneralOccupancy> impl_;
};

}  // namespace qpgame
