#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpgame/board.hpp"
#include "qpgame/solver.hpp"

namespace qpgame {

/// One table entry: high nibble row, low nibble column, 0xFF for "no reply".
struct ReplyByte {
  static constexpr std::uint8_t kInvalid = 0xFF;

  std::uint8_t raw = kInvalid;

  bool valid() const noexcept { return raw != kInvalid; }
  bool operator==(const ReplyByte&) const = default;
};

std::optional<Position> decode(ReplyByte b) noexcept;
/// Throws ContractViolation if a coordinate does not fit in a nibble.
ReplyByte encode(std::optional<Position> p);

class TableError : public std::runtime_error {
 public:
  enum class Kind {
    UnexpectedFirstMove,
    UnexpectedThirdMove,
    InvalidByDesign,
    Format,
    Precondition,
  };

  TableError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Player 2's precomputed answers for the first two rounds.
///
/// T maps a first move to the round-1 reply. A maps a first move to a 1-based
/// index into B (0 for first moves outside the canonical region). Each B
/// sub-table maps player 1's second move (the third move of the game) to the
/// round-2 reply. All grids are n x n and addressed by (row, col).
class AnswerTables {
 public:
  /// Throws ContractViolation for n > 16: replies are nibble-encoded.
  explicit AnswerTables(Dims d);

  const Dims& dims() const noexcept { return dims_; }

  ReplyByte t(Position first) const { return t_.at(index(first)); }
  void set_t(Position first, ReplyByte b) { t_.at(index(first)) = b; }

  std::uint8_t a(Position first) const { return a_.at(index(first)); }
  void set_a(Position first, std::uint8_t b_index) { a_.at(index(first)) = b_index; }

  std::size_t b_count() const noexcept { return b_.size(); }
  /// Appends an all-invalid sub-table and returns its 1-based index.
  std::size_t add_b_table();
  ReplyByte b(std::size_t b_index, Position third) const;
  void set_b(std::size_t b_index, Position third, ReplyByte value);

  bool operator==(const AnswerTables&) const = default;

 private:
  std::size_t index(Position p) const;

  Dims dims_;
  std::vector<ReplyByte> t_;
  std::vector<std::uint8_t> a_;
  std::vector<std::vector<ReplyByte>> b_;
};

/// Round-1 reply to a canonical first move.
Position lookup_round1(const AnswerTables& t, Position first);
/// Round-2 reply given the first and third moves of the game.
Position lookup_round2(const AnswerTables& t, Position first, Position third);

/// Lookups for any first move: the position is carried into the canonical
/// region by a board symmetry and the reply carried back.
Position lookup_round1_any(const AnswerTables& t, Position first);
Position lookup_round2_any(const AnswerTables& t, Position first, Position third);

struct TableViolation {
  std::string table;  // "T", "A" or "B<k>"
  Position index;
  std::string rule;

  std::string to_string() const;
};

/// Structural checks; empty iff every table invariant holds.
std::vector<TableViolation> validate(const AnswerTables& t);

/// Replays every tabulated reply through the search and reports the ones that
/// do not leave player 1 lost.
std::vector<TableViolation> verify_replies_win(const AnswerTables& t, const SearchOptions& opts,
                                               ProgressSink& sink = null_sink());

void save_tables(const AnswerTables& t, std::ostream& out);
std::string save_tables(const AnswerTables& t);
AnswerTables load_tables(std::istream& in);
AnswerTables load_tables(const std::string& text);
void save_tables_file(const AnswerTables& t, const std::filesystem::path& path);
AnswerTables load_tables_file(const std::filesystem::path& path);

struct GenerateOptions {
  SearchOptions search;
  /// Generation above this size must be requested explicitly.
  int max_n = 12;
};

/// Builds winning player-2 reply tables for an even n where player 2 wins.
AnswerTables generate_tables(int n, const GenerateOptions& opts = {},
                             ProgressSink& sink = null_sink());

/// Round-1 searches needed for even n when each diagonal first move is
/// answered inside the canonical region, so its position coincides with the
/// position reached from a non-diagonal first move.
std::size_t round1_check_count(Dims d);

/// Distinct unordered {first move, reply} pairs in T over the canonical region.
std::size_t distinct_round1_pairs(const AnswerTables& t);

}  // namespace qpgame
