#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpgame/reporting.hpp"
#include "qpgame/service.hpp"
#include "qpgame/solver.hpp"
#include "qpgame/strategies.hpp"
#include "qpgame/tables.hpp"

namespace qpgame::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckArgs {
  int min = 6;
  int max = 12;
  bool even_only = true;
  bool odd_strategy = false;
  bool no_rotsym = false;
  bool no_forbidden = false;
  bool no_reply_rotation = false;
  bool no_canonical_first = false;
  bool no_inner_start = false;
  bool no_progress = false;
  bool first_move_stats = false;
  bool third_move_markers = false;
  CallCount progress_interval = 1'000'000;
  std::string listing;
  std::string json;
  std::string tables;
};

struct DemoArgs {
  int n = 5;
  std::string strategy = "mirror-odd";
  std::string adversary = "random";
  std::uint64_t seed = 1;
  std::string tables;
};

struct ServeArgs {
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  int budget_ms = 2000;
};

struct TablesGenerateArgs {
  int n = 10;
  std::string out;
  int max_n = 12;
};

struct TablesValidateArgs {
  std::string in;
  bool deep = false;
};

std::string fingerprint(const SearchOptions& o, bool odd_strategy) {
  std::ostringstream s;
  s << "rotsym=" << o.use_rotsym_pruning << ",forbidden=" << o.use_forbidden_pruning
    << ",reply_rotation=" << o.use_reply_row_rotation
    << ",canonical_first=" << o.use_first_move_canonicalization
    << ",inner_start=" << o.force_inner_start_even_small << ",odd_strategy=" << odd_strategy
    << ",tables=" << (o.tables != nullptr);
  return s.str();
}

const char* result_word(Player winner) { return winner == Player::One ? "win" : "loss"; }

nlohmann::json case_json(int n, const SolveResult& r, double seconds, bool conclusive) {
  nlohmann::json first_moves = nlohmann::json::array();
  for (const auto& f : r.stats.per_first_move) {
    first_moves.push_back({{"first", {f.first.row, f.first.col}},
                           {"player2", f.outcome.winner == Player::Two ? "win" : "loss"},
                           {"calls", f.calls}});
  }
  return {{"n", n},
          {"result", result_word(r.outcome.winner)},
          {"winner", player_number(r.outcome.winner)},
          {"calls", r.stats.calls},
          {"wall_seconds", seconds},
          {"conclusive", conclusive},
          {"restricted", r.stats.restricted()},
          {"first_moves", first_moves}};
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string resolve_listing(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("QPGAME_LISTING"); env != nullptr && *env != '\0') return env;
  return kDefaultListingPath;
}

int run_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  if (a.min < 1 || a.max > kMaxBoardSize || a.min > a.max) {
    throw UsageError("need 1 <= --min <= --max <= 32");
  }
  if (a.progress_interval < 1) throw UsageError("--progress-interval must be >= 1");

  std::optional<AnswerTables> tables;
  if (!a.tables.empty()) tables = load_tables_file(a.tables);

  ReportConfig rc;
  rc.listing_path = resolve_listing(a.listing);
  rc.emit_progress_plus = !a.no_progress;
  rc.first_move_checking_statistics = a.first_move_stats;
  rc.indicate_third_moves_checking = a.third_move_markers;
  rc.progress_interval = a.progress_interval;
  Reporter reporter(out, rc);
  ReportingSink sink(reporter, [] { return cancel_flag().load(); });

  SearchOptions base;
  base.use_rotsym_pruning = !a.no_rotsym;
  base.use_forbidden_pruning = !a.no_forbidden;
  base.use_reply_row_rotation = !a.no_reply_rotation;
  base.use_first_move_canonicalization = !a.no_canonical_first;
  base.force_inner_start_even_small = !a.no_inner_start;
  base.odd_n_strategy_mode = a.odd_strategy;
  base.progress_interval = a.progress_interval;

  nlohmann::json report = {{"tool", "qpgame"},
                           {"version", kVersion},
                           {"fingerprint", fingerprint(base, a.odd_strategy)},
                           {"cases", nlohmann::json::array()}};
  auto flush_json = [&](const char* status) {
    if (a.json.empty()) return;
    report["status"] = status;
    write_json_file(a.json, report);
  };

  reporter.write_header(kVersion);
  int exit_code = kOk;
  for (int n = a.min; n <= a.max; ++n) {
    if (n % 2 == 1 && a.even_only && !a.odd_strategy) continue;
    SearchOptions opts = base;
    if (tables && tables->dims().n() == n) opts.tables = &*tables;

    reporter.write_case_start(n);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    try {
      const SolveResult r = solve(n, opts, sink);
      reporter.write_case_end(r.outcome, r.stats.calls);
      report["cases"].push_back(case_json(n, r, elapsed(), true));
    } catch (const InconclusiveError& e) {
      reporter.write_note("Search inconclusive: " + std::string(e.what()) + ". Sum of calls: " +
                          std::to_string(e.result().stats.calls));
      report["cases"].push_back(case_json(n, e.result(), elapsed(), false));
      exit_code = kInconclusive;
    } catch (const SearchCancelled& e) {
      reporter.write_cancelled(e.stats().calls);
      flush_json("cancelled");
      err << "cancelled\n";
      return kCancelled;
    }
  }
  reporter.write_regular_stop();
  flush_json(exit_code == kOk ? "completed" : "inconclusive");
  return exit_code;
}

void print_board(std::ostream& out, const GameState& s) { out << render(s) << '\n'; }

std::optional<Position> read_human_move(const GameState& s, std::istream& in, std::ostream& out) {
  std::string line;
  while (true) {
    out << "Player " << player_number(s.to_move()) << ", your move (r c): " << std::flush;
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream fields(line);
    Position p;
    if (!(fields >> p.row >> p.col)) {
      out << "Please enter a row and a column, e.g. \"0 3\".\n";
      continue;
    }
    if (!in_bounds(p, s.dims())) {
      out << to_string(p) << " is off the board.\n";
      continue;
    }
    if (const auto conflict = s.conflict_at(p)) {
      out << "Illegal move " << p << ": " << describe(*conflict) << ".\n";
      continue;
    }
    return p;
  }
}

int run_demo(const DemoArgs& a, std::istream& in, std::ostream& out) {
  const auto kind = parse_strategy(a.strategy);
  if (!kind) throw UsageError("unknown strategy '" + a.strategy + "'");
  if (a.adversary != "random" && a.adversary != "stdin") {
    throw UsageError("--adversary must be random or stdin");
  }
  if (a.n < 1 || a.n > kMaxBoardSize) throw UsageError("--n must be in 1..32");

  std::optional<AnswerTables> tables;
  if (!a.tables.empty()) tables = load_tables_file(a.tables);
  StrategyContext ctx;
  ctx.tables = tables ? &*tables : nullptr;
  try {
    check_applicable(*kind, Dims(a.n), ctx);
  } catch (const StrategyError& e) {
    throw UsageError(e.what());
  }

  const Player side = natural_side(*kind);
  MoveSource random = random_adversary(a.seed);
  GameState s(Dims(a.n));
  out << "Strategy " << to_string(*kind) << " plays player " << player_number(side) << " on a "
      << a.n << "x" << a.n << " board.\n\n";
  print_board(out, s);
  while (s.has_available()) {
    Position p;
    if (s.to_move() == side) {
      p = *next_move(*kind, s, ctx);
    } else if (a.adversary == "stdin") {
      const auto human = read_human_move(s, in, out);
      if (!human) {
        out << "\nInput ended; game abandoned.\n";
        return kFailure;
      }
      p = *human;
    } else {
      p = random(s);
    }
    s.place(p);
    out << s.move_count() << ": " << p << "  (player " << (s.move_count() % 2 == 1 ? 1 : 2)
        << ")\n";
    print_board(out, s);
  }
  const int winner = s.move_count() % 2 == 1 ? 1 : 2;
  out << "Transcript:\n" << format_transcript(s.moves());
  out << "Player " << winner << " wins (last to move), " << s.move_count() << " queens placed.\n";
  return kOk;
}

int run_tables_generate(const TablesGenerateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.out.empty()) throw UsageError("--out is required");
  GenerateOptions opts;
  opts.max_n = a.max_n;
  struct CancelSink final : ProgressSink {
    bool poll_cancel() override { return cancel_flag().load(); }
  } sink;
  AnswerTables tables = [&] {
    try {
      return generate_tables(a.n, opts, sink);
    } catch (const TableError& e) {
      if (e.kind() == TableError::Kind::Precondition) throw UsageError(e.what());
      throw;
    }
  }();
  const auto violations = validate(tables);
  for (const auto& v : violations) err << v.to_string() << '\n';
  if (!violations.empty()) return kFailure;
  save_tables_file(tables, a.out);
  out << "Wrote tables for n = " << a.n << " (" << tables.b_count() << " round-2 tables, "
      << distinct_round1_pairs(tables) << " distinct round-1 positions) to " << a.out << '\n';
  return kOk;
}

int run_tables_validate(const TablesValidateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.in.empty()) throw UsageError("--in is required");
  const AnswerTables tables = load_tables_file(a.in);
  auto violations = validate(tables);
  if (violations.empty() && a.deep) {
    violations = verify_replies_win(tables, SearchOptions{});
  }
  for (const auto& v : violations) err << v.to_string() << '\n';
  if (!violations.empty()) {
    out << violations.size() << " violation(s) in " << a.in << '\n';
    return kFailure;
  }
  out << "OK: " << a.in << " (n = " << tables.dims().n() << ") has no violations\n";
  return kOk;
}

int run_serve(const ServeArgs& a, std::ostream& out) {
  if (a.port < 0 || a.port > 65535) throw UsageError("--port must be in 0..65535");
  ServiceConfig config;
  config.engine_budget = std::chrono::milliseconds(a.budget_ms);
  GameService service(config);
  std::optional<std::filesystem::path> static_dir;
  if (!a.static_dir.empty()) static_dir = a.static_dir;
  HttpServer server(service, static_dir);
  const int port = server.bind(a.host, a.port);
  out << "Listening on http://" << a.host << ':' << port << '\n' << std::flush;

  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done.load()) {
      if (cancel_flag().load()) {
        server.stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });
  server.listen();
  done = true;
  watcher.join();
  out << "Server stopped.\n";
  return kOk;
}

}  // namespace

std::atomic<bool>& cancel_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Solver, strategies and play service for the non-attacking queens game", "qpgame"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide who wins for a range of board sizes");
  c->add_option("--min", check.min, "Smallest board size")->capture_default_str();
  c->add_option("--max", check.max, "Largest board size")->capture_default_str();
  c->add_flag("--even-only,!--all-sizes", check.even_only,
              "Only check even n (odd sizes are included with --odd-strategy)");
  c->add_flag("--odd-strategy", check.odd_strategy,
              "Check odd n with player 1 fixed to the center-then-mirror strategy");
  c->add_flag("--no-rotsym", check.no_rotsym, "Disable the half-board restriction");
  c->add_flag("--no-forbidden", check.no_forbidden, "Disable forbidden-reply pruning");
  c->add_flag("--no-reply-rotation", check.no_reply_rotation, "Always search replies from row 0");
  c->add_flag("--no-canonical-first", check.no_canonical_first,
              "Try every first move, not one per symmetry class");
  c->add_flag("--no-inner-start", check.no_inner_start,
              "Do not force the inner opening for even n <= 8");
  c->add_flag("--no-progress", check.no_progress, "Suppress '+' progress marks");
  c->add_flag("--first-move-stats", check.first_move_stats, "Summary line per first move");
  c->add_flag("--third-move-markers", check.third_move_markers,
              "Mark the start and end of each third-move subtree");
  c->add_option("--progress-interval", check.progress_interval, "Calls per '+' mark")
      ->capture_default_str();
  c->add_option("--listing", check.listing, "Listing file (default $QPGAME_LISTING or QPGAME.LST)");
  c->add_option("--json", check.json, "Write machine-readable results to this file");
  c->add_option("--tables", check.tables, "Answer tables applied when their n matches");

  DemoArgs demo;
  auto* d = app.add_subcommand("demo", "Play one game with a strategy against an adversary");
  d->add_option("--n", demo.n, "Board size")->capture_default_str();
  d->add_option("--strategy", demo.strategy, "mirror-odd | inner-four | table | perfect")
      ->capture_default_str();
  d->add_option("--adversary", demo.adversary, "random | stdin")->capture_default_str();
  d->add_option("--seed", demo.seed, "Seed for the random adversary")->capture_default_str();
  d->add_option("--tables", demo.tables, "Answer tables for the table strategy");

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "Run the HTTP play service");
  s->add_option("--port", serve.port, "TCP port; 0 picks a free one")->capture_default_str();
  s->add_option("--host", serve.host, "Address to bind")->capture_default_str();
  s->add_option("--static", serve.static_dir, "Directory with the built web UI");
  s->add_option("--budget-ms", serve.budget_ms, "Engine search budget per move")
      ->capture_default_str();

  TablesGenerateArgs gen;
  auto* g = app.add_subcommand("tables-generate", "Generate player-2 answer tables");
  g->add_option("--n", gen.n, "Board size (even, player 2 must win)")->capture_default_str();
  g->add_option("--out", gen.out, "Output file")->required();
  g->add_option("--max-n", gen.max_n, "Refuse larger n")->capture_default_str();

  TablesValidateArgs val;
  auto* v = app.add_subcommand("tables-validate", "Check an answer-table file");
  v->add_option("--in", val.in, "Table file")->required();
  v->add_flag("--deep", val.deep, "Also replay every reply through the solver");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return run_check(check, out, err);
    if (*d) return run_demo(demo, in, out);
    if (*s) return run_serve(serve, out);
    if (*g) return run_tables_generate(gen, out, err);
    if (*v) return run_tables_validate(val, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const SearchCancelled&) {
    err << "cancelled\n";
    return kCancelled;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace qpgame::cli
