#include "qpgame/tables.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace qpgame {

std::optional<Position> decode(ReplyByte b) noexcept {
  if (!b.valid()) return std::nullopt;
  return Position{b.raw >> 4, b.raw & 0x0F};
}

ReplyByte encode(std::optional<Position> p) {
  if (!p) return ReplyByte{};
  if (p->row < 0 || p->row > 15 || p->col < 0 || p->col > 15) {
    throw ContractViolation("position " + to_string(*p) + " does not fit in a reply byte");
  }
  const auto raw = static_cast<std::uint8_t>((p->row << 4) | p->col);
  if (raw == ReplyByte::kInvalid) {
    throw ContractViolation("(15,15) collides with the invalid-reply marker");
  }
  return ReplyByte{raw};
}

AnswerTables::AnswerTables(Dims d)
    : dims_(d),
      t_(static_cast<std::size_t>(d.cells())),
      a_(static_cast<std::size_t>(d.cells()), 0) {
  if (d.n() > 16) throw ContractViolation("answer tables support n <= 16");
}

std::size_t AnswerTables::index(Position p) const {
  if (!in_bounds(p, dims_)) throw ContractViolation("table index out of range: " + to_string(p));
  return static_cast<std::size_t>(p.row * dims_.n() + p.col);
}

std::size_t AnswerTables::add_b_table() {
  if (b_.size() >= 255) throw ContractViolation("at most 255 B sub-tables");
  b_.emplace_back(static_cast<std::size_t>(dims_.cells()));
  return b_.size();
}

ReplyByte AnswerTables::b(std::size_t b_index, Position third) const {
  if (b_index == 0 || b_index > b_.size()) {
    throw ContractViolation("B index " + std::to_string(b_index) + " out of range");
  }
  return b_[b_index - 1][index(third)];
}

void AnswerTables::set_b(std::size_t b_index, Position third, ReplyByte value) {
  if (b_index == 0 || b_index > b_.size()) {
    throw ContractViolation("B index " + std::to_string(b_index) + " out of range");
  }
  b_[b_index - 1][index(third)] = value;
}

Position lookup_round1(const AnswerTables& t, Position first) {
  if (!is_canonical_first(first, t.dims())) {
    throw ContractViolation("round-1 lookup needs a canonical first move, got " + to_string(first));
  }
  const auto reply = decode(t.t(first));
  if (!reply) {
    throw TableError(TableError::Kind::UnexpectedFirstMove,
                     "no round-1 reply for first move " + to_string(first));
  }
  return *reply;
}

Position lookup_round2(const AnswerTables& t, Position first, Position third) {
  const std::uint8_t b_index = t.a(first);
  if (b_index == 0) {
    throw TableError(TableError::Kind::InvalidByDesign,
                     "first move " + to_string(first) + " has no round-2 table");
  }
  if (b_index > t.b_count()) {
    throw TableError(TableError::Kind::Format, "A entry points past the last B table");
  }
  const auto reply = decode(t.b(b_index, third));
  if (!reply) {
    throw TableError(TableError::Kind::UnexpectedThirdMove,
                     "no round-2 reply for " + to_string(first) + " then " + to_string(third));
  }
  return *reply;
}

Position lookup_round1_any(const AnswerTables& t, Position first) {
  const auto [sym, canon] = canonicalize(first, t.dims());
  return apply(inverse(sym), lookup_round1(t, canon), t.dims());
}

Position lookup_round2_any(const AnswerTables& t, Position first, Position third) {
  const auto [sym, canon] = canonicalize(first, t.dims());
  const Position reply = lookup_round2(t, canon, apply(sym, third, t.dims()));
  return apply(inverse(sym), reply, t.dims());
}

std::string TableViolation::to_string() const {
  return table + "[" + std::to_string(index.row) + "][" + std::to_string(index.col) + "]: " + rule;
}

namespace {

bool conflicts(Position a, Position b) { return a == b || attacks(a, b); }

std::string b_name(std::size_t k) { return "B" + std::to_string(k); }

}  // namespace

std::vector<TableViolation> validate(const AnswerTables& t) {
  std::vector<TableViolation> out;
  const Dims d = t.dims();
  const int n = d.n();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Position first{r, c};
      const bool canonical = is_canonical_first(first, d);
      const auto reply = decode(t.t(first));
      if (!canonical) {
        if (reply) out.push_back({"T", first, "entry for a non-canonical first move"});
      } else if (reply) {
        if (!in_bounds(*reply, d)) {
          out.push_back({"T", first, "reply " + to_string(*reply) + " outside the board"});
        } else if (conflicts(*reply, first)) {
          out.push_back({"T", first, "reply " + to_string(*reply) + " conflicts with the first move"});
        }
      }

      const std::uint8_t k = t.a(first);
      if (!canonical && k != 0) {
        out.push_back({"A", first, "non-canonical first move has a B index"});
      } else if (canonical && k == 0) {
        out.push_back({"A", first, "canonical first move has no B index"});
      } else if (k > t.b_count()) {
        out.push_back({"A", first, "B index " + std::to_string(k) + " has no table"});
      }
    }
  }

  // B entries are checked in the context of the first move that owns the table.
  std::set<std::size_t> checked;
  for (Position first : canonical_first_moves(d)) {
    const std::uint8_t k = t.a(first);
    if (k == 0 || k > t.b_count() || !checked.insert(k).second) continue;
    const auto round1 = decode(t.t(first));
    const bool round1_ok = round1 && in_bounds(*round1, d) && !conflicts(*round1, first);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const Position third{r, c};
        const auto reply = decode(t.b(k, third));
        if (!reply) continue;
        if (!round1_ok) {
          out.push_back({b_name(k), third, "entry without a usable round-1 reply"});
        } else if (conflicts(third, first) || conflicts(third, *round1)) {
          out.push_back({b_name(k), third, "entry for an unreachable third move"});
        } else if (!in_bounds(*reply, d)) {
          out.push_back({b_name(k), third, "reply " + to_string(*reply) + " outside the board"});
        } else if (conflicts(*reply, first)) {
          out.push_back({b_name(k), third, "reply " + to_string(*reply) + " conflicts with the first move"});
        } else if (conflicts(*reply, *round1)) {
          out.push_back({b_name(k), third, "reply " + to_string(*reply) + " conflicts with the round-1 reply"});
        } else if (conflicts(*reply, third)) {
          out.push_back({b_name(k), third, "reply " + to_string(*reply) + " conflicts with the third move"});
        }
      }
    }
  }
  return out;
}

std::vector<TableViolation> verify_replies_win(const AnswerTables& t, const SearchOptions& opts,
                                               ProgressSink& sink) {
  SearchOptions search = opts;
  search.tables = nullptr;
  search.odd_n_strategy_mode = false;
  const Dims d = t.dims();

  std::vector<TableViolation> out;
  auto player1_wins = [&](const GameState& s) {
    SearchStats stats;
    return wins(s, search, stats, sink).wins;
  };

  for (Position first : canonical_first_moves(d)) {
    const auto round1 = decode(t.t(first));
    if (!round1 || !in_bounds(*round1, d) || conflicts(*round1, first)) continue;
    GameState s(d);
    s.place(first);
    s.place(*round1);
    if (player1_wins(s)) out.push_back({"T", first, "round-1 reply does not win for player 2"});

    const std::uint8_t k = t.a(first);
    if (k == 0 || k > t.b_count()) continue;
    for (Position third : s.available_positions()) {
      const auto round2 = decode(t.b(k, third));
      if (!round2) continue;
      GameState s4 = placed(s, third);
      if (!in_bounds(*round2, d) || !s4.is_available(*round2)) continue;
      s4.place(*round2);
      if (player1_wins(s4)) out.push_back({b_name(k), third, "round-2 reply does not win for player 2"});
    }
  }
  return out;
}

namespace {

constexpr const char* kHeaderPrefix = "QPTABLES v1 n=";

void write_grid(std::ostream& out, int n, auto&& byte_at) {
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c > 0) out << ' ';
      out << std::uppercase << std::hex << std::setw(2) << std::setfill('0')
          << static_cast<unsigned>(byte_at(Position{r, c}));
    }
    out << std::dec << '\n';
  }
}

TableError format_error(std::size_t line, const std::string& what) {
  return TableError(TableError::Kind::Format, "line " + std::to_string(line) + ": " + what);
}

std::uint8_t parse_hex_byte(const std::string& token, std::size_t line) {
  if (token.size() != 2 || !std::isxdigit(static_cast<unsigned char>(token[0])) ||
      !std::isxdigit(static_cast<unsigned char>(token[1]))) {
    throw format_error(line, "expected a two-digit hex byte, got '" + token + "'");
  }
  return static_cast<std::uint8_t>(std::stoul(token, nullptr, 16));
}

}  // namespace

void save_tables(const AnswerTables& t, std::ostream& out) {
  const int n = t.dims().n();
  out << kHeaderPrefix << n << '\n';
  out << "# A holds B indices 1.." << t.b_count() << " assigned in canonical first-move order\n";
  out << "T\n";
  write_grid(out, n, [&](Position p) { return t.t(p).raw; });
  out << "A\n";
  write_grid(out, n, [&](Position p) { return t.a(p); });
  for (std::size_t k = 1; k <= t.b_count(); ++k) {
    out << 'B' << k << '\n';
    write_grid(out, n, [&](Position p) { return t.b(k, p).raw; });
  }
}

std::string save_tables(const AnswerTables& t) {
  std::ostringstream out;
  save_tables(t, out);
  return out.str();
}

AnswerTables load_tables(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<AnswerTables> tables;
  std::string section;
  std::vector<std::uint8_t> bytes;

  auto finish_section = [&](std::size_t line) {
    if (section.empty()) return;
    const auto n = static_cast<std::size_t>(tables->dims().n());
    if (bytes.size() != n * n) {
      throw format_error(line, "section " + section + " has " + std::to_string(bytes.size()) +
                                   " bytes, expected " + std::to_string(n * n));
    }
    const int ni = tables->dims().n();
    std::size_t b_index = 0;
    if (section[0] == 'B') b_index = tables->add_b_table();
    for (int r = 0; r < ni; ++r) {
      for (int c = 0; c < ni; ++c) {
        const std::uint8_t v = bytes[static_cast<std::size_t>(r * ni + c)];
        if (section == "T") {
          tables->set_t({r, c}, ReplyByte{v});
        } else if (section == "A") {
          tables->set_a({r, c}, v);
        } else {
          tables->set_b(b_index, {r, c}, ReplyByte{v});
        }
      }
    }
    bytes.clear();
  };

  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string token;
    if (!(tokens >> token)) continue;

    if (!tables) {
      if (token != "QPTABLES") throw format_error(line_no, "missing QPTABLES header");
      std::string version;
      std::string size;
      tokens >> version >> size;
      if (version != "v1") throw format_error(line_no, "unsupported version '" + version + "'");
      if (size.rfind("n=", 0) != 0) throw format_error(line_no, "header lacks n=<size>");
      int n = 0;
      try {
        n = std::stoi(size.substr(2));
      } catch (const std::exception&) {
        throw format_error(line_no, "bad board size '" + size + "'");
      }
      if (n < 1 || n > 16) throw format_error(line_no, "board size must be 1..16");
      tables.emplace(Dims(n));
      continue;
    }

    std::vector<std::string> words{token};
    while (tokens >> token) words.push_back(token);
    const std::string& head = words.front();
    // A section name stands alone on its line; data rows always hold n bytes.
    const bool is_section =
        words.size() == 1 &&
        (head == "T" || head == "A" ||
         (head.size() > 1 && head[0] == 'B' &&
          std::all_of(head.begin() + 1, head.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; })));
    if (is_section) {
      finish_section(line_no);
      if (head[0] == 'B') {
        if (seen.count("A") == 0) throw format_error(line_no, "B sections must follow A");
        if (std::stoul(head.substr(1)) != tables->b_count() + 1) {
          throw format_error(line_no, "B sections must be numbered consecutively from 1");
        }
      } else if (!seen.insert(head).second) {
        throw format_error(line_no, "duplicate section " + head);
      }
      section = head;
      continue;
    }
    if (section.empty()) throw format_error(line_no, "data before the first section");
    for (const std::string& word : words) bytes.push_back(parse_hex_byte(word, line_no));
  }
  if (!tables) throw format_error(line_no, "empty table file");
  finish_section(line_no);
  if (seen.count("T") == 0 || seen.count("A") == 0) {
    throw format_error(line_no, "T and A sections are required");
  }
  return std::move(*tables);
}

AnswerTables load_tables(const std::string& text) {
  std::istringstream in(text);
  return load_tables(in);
}

void save_tables_file(const AnswerTables& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  save_tables(t, out);
  out.flush();
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

AnswerTables load_tables_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return load_tables(in);
  } catch (const TableError& e) {
    throw TableError(e.kind(), path.string() + ": " + e.what());
  }
}

namespace {

// Candidate replies in preference order: `preferred` first, then the rest
// row-major, without duplicates.
std::vector<Position> reply_candidates(const GameState& s, std::span<const Position> preferred) {
  std::vector<Position> out;
  for (Position p : preferred) {
    if (in_bounds(p, s.dims()) && s.is_available(p) &&
        std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(p);
    }
  }
  for (Position p : s.available_positions()) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

}  // namespace

AnswerTables generate_tables(int n, const GenerateOptions& opts, ProgressSink& sink) {
  const Dims d(n);
  if (n % 2 != 0) {
    throw TableError(TableError::Kind::Precondition, "answer tables are generated for even n only");
  }
  if (n > 16) throw TableError(TableError::Kind::Precondition, "answer tables support n <= 16");
  if (n > opts.max_n) {
    throw TableError(TableError::Kind::Precondition,
                     "n = " + std::to_string(n) + " exceeds the generation limit " +
                         std::to_string(opts.max_n));
  }

  SearchOptions search = opts.search;
  search.tables = nullptr;
  search.odd_n_strategy_mode = false;
  SolveResult solved;
  try {
    solved = solve(n, search, sink);
  } catch (const InconclusiveError& e) {
    throw TableError(TableError::Kind::Precondition,
                     std::string("cannot establish a player-2 win: ") + e.what());
  }
  if (solved.outcome.winner != Player::Two) {
    throw TableError(TableError::Kind::Precondition,
                     "player 1 wins n = " + std::to_string(n) + "; there are no winning replies");
  }

  // true iff moving to `reply` leaves player 1 (to move) without a win
  auto reply_wins = [&](GameState& s, Position reply) {
    s.place(reply);
    SearchStats stats;
    const bool player1_wins = wins(s, search, stats, sink).wins;
    s.unplace_last();
    return !player1_wins;
  };
  auto first_winning = [&](GameState& s, std::span<const Position> preferred) -> Position {
    for (Position q : reply_candidates(s, preferred)) {
      if (reply_wins(s, q)) return q;
    }
    throw std::logic_error("no winning reply after " + std::to_string(s.move_count()) +
                           " moves although player 2 wins the game");
  };

  AnswerTables tables(d);
  const std::vector<Position> canonical = canonical_first_moves(d);
  for (Position first : canonical) {
    GameState s(d);
    s.place(first);
    std::vector<Position> preferred{mirror(first, d)};
    if (first.row == first.col) {
      // the mirror shares the diagonal; look inside the canonical region instead
      preferred = canonical;
    }
    const Position round1 = first_winning(s, preferred);
    tables.set_t(first, encode(round1));
    s.place(round1);

    const std::size_t k = tables.add_b_table();
    tables.set_a(first, static_cast<std::uint8_t>(k));
    for (Position third : s.available_positions()) {
      s.place(third);
      const Position mirrored[] = {mirror(third, d)};
      tables.set_b(k, third, encode(first_winning(s, mirrored)));
      s.unplace_last();
    }
  }
  return tables;
}

std::size_t round1_check_count(Dims d) {
  if (d.n() % 2 != 0) throw ContractViolation("round-1 check count is defined for even n");
  const std::size_t diagonal = static_cast<std::size_t>(d.half()) + 1;
  return canonical_first_moves(d).size() - diagonal;
}

std::size_t distinct_round1_pairs(const AnswerTables& t) {
  std::set<std::pair<Position, Position>> pairs;
  for (Position first : canonical_first_moves(t.dims())) {
    if (const auto reply = decode(t.t(first))) {
      pairs.insert(first < *reply ? std::pair{first, *reply} : std::pair{*reply, first});
    }
  }
  return pairs.size();
}

}  // namespace qpgame
