#include "qpgame/occupancy.hpp"

namespace qpgame {

const char* to_string(Constraint c) noexcept {
  switch (c) {
    case Constraint::Row: return "row";
    case Constraint::Column: return "column";
    case Constraint::FallingDiagonal: return "falling diagonal";
    case Constraint::RisingDiagonal: return "rising diagonal";
  }
  return "unknown";
}

CompactOccupancy::CompactOccupancy(Dims d) : n_(d.n()) {
  if (n_ > kMaxCompactBoardSize) {
    throw ContractViolation("compact occupancy supports n <= 16, got " + std::to_string(n_));
  }
}

std::optional<Constraint> CompactOccupancy::blocking(Position p) const noexcept {
  if ((lines_ >> p.row) & 1U) return Constraint::Row;
  if ((lines_ >> (16 + p.col)) & 1U) return Constraint::Column;
  if ((diags_ >> (p.row + p.col)) & 1U) return Constraint::FallingDiagonal;
  if ((diags_ >> (32 + p.col - p.row + n_ - 1)) & 1U) return Constraint::RisingDiagonal;
  return std::nullopt;
}

OccupancyMasks CompactOccupancy::masks() const noexcept {
  OccupancyMasks m;
  m.rows = lines_ & 0xFFFFU;
  m.cols = lines_ >> 16;
  m.falling = diags_ & 0x7FFFFFFFULL;
  // stored index s = col - row + (n-1); canonical index is 2(n-1) - s
  const int span = 2 * n_ - 1;
  for (int s = 0; s < span; ++s) {
    if ((diags_ >> (32 + s)) & 1U) m.rising |= std::uint64_t{1} << (span - 1 - s);
  }
  return m;
}

std::optional<Constraint> GeneralOccupancy::blocking(Position p) const noexcept {
  const auto r = static_cast<std::size_t>(p.row);
  const auto c = static_cast<std::size_t>(p.col);
  if (rows_.test(r)) return Constraint::Row;
  if (cols_.test(c)) return Constraint::Column;
  if (falling_.test(r + c)) return Constraint::FallingDiagonal;
  if (rising_.test(r + static_cast<std::size_t>(n_ - 1) - c)) return Constraint::RisingDiagonal;
  return std::nullopt;
}

void GeneralOccupancy::assign(Position p, bool value) noexcept {
  const auto r = static_cast<std::size_t>(p.row);
  const auto c = static_cast<std::size_t>(p.col);
  rows_.set(r, value);
  cols_.set(c, value);
  falling_.set(r + c, value);
  rising_.set(r + static_cast<std::size_t>(n_ - 1) - c, value);
}

OccupancyMasks GeneralOccupancy::masks() const noexcept {
  OccupancyMasks m;
  m.rows = static_cast<std::uint32_t>(rows_.to_ulong());
  m.cols = static_cast<std::uint32_t>(cols_.to_ulong());
  m.falling = falling_.to_ullong();
  m.rising = rising_.to_ullong();
  return m;
}

namespace {

std::variant<CompactOccupancy, GeneralOccupancy> make_impl(Dims d, Representation rep) {
  if (rep == Representation::Compact) return CompactOccupancy(d);
  return GeneralOccupancy(d);
}

}  // namespace

Occupancy::Occupancy(Dims d, Representation rep) : impl_(make_impl(d, rep)) {}

}  // namespace qpgame
