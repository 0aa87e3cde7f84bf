#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "qpgame/solver.hpp"

namespace qpgame {

inline constexpr const char* kDefaultListingPath = "QPGAME.LST";

struct ReportConfig {
  std::filesystem::path listing_path = kDefaultListingPath;
  /// A '+' on the stream every `progress_interval` calls.
  bool emit_progress_plus = true;
  /// Per-first-move summary lines on the stream and in the listing.
  bool first_move_checking_statistics = false;
  /// "[1: (r,c)] 3: (r,c)" ... " -> d" markers, stream only.
  bool indicate_third_moves_checking = false;
  CallCount progress_interval = 1'000'000;
};

// Line formats shared by the stream and the listing.
std::string case_start_line(int n);
std::string case_end_line(Outcome outcome, CallCount calls);
std::string first_move_line(Position first, bool player2_wins, CallCount calls);
std::string third_move_enter_text(Position first, Position third);
std::string third_move_exit_text(int win_digit);

inline constexpr const char* kRegularStopLine = "== Regular program stop ==";
inline constexpr const char* kCancelledStopLine = "== Program cancelled ==";

/// Writes progress to a stream and the summary lines to a listing. The listing
/// receives whole lines only and is flushed after each of them, so it stays
/// readable if the process is interrupted.
class Reporter {
 public:
  /// Creates or truncates the listing file. Throws std::runtime_error naming
  /// the path if it cannot be opened.
  Reporter(std::ostream& stream, ReportConfig config);
  /// Listing goes to a caller-owned stream.
  Reporter(std::ostream& stream, std::ostream& listing, ReportConfig config);

  const ReportConfig& config() const noexcept { return config_; }

  void write_header(const std::string& version);
  void write_case_start(int n);
  void write_case_end(Outcome outcome, CallCount calls);
  void write_first_move_stat(Position first, bool player2_wins, CallCount calls);
  /// Emits one '+' per progress boundary crossed since the last call.
  void emit_progress(CallCount total_calls);
  void write_third_move_enter(Position first, Position third);
  void write_third_move_exit(int win_digit);
  /// Message lines (errors, notes) to both outputs.
  void write_note(const std::string& line);
  void write_regular_stop();
  void write_cancelled(CallCount calls);

 private:
  void both(const std::string& line);
  void stream_line(const std::string& line);
  void end_partial_line();
  void check_listing();

  std::ostream& stream_;
  std::unique_ptr<std::ofstream> owned_listing_;
  std::ostream* listing_;
  ReportConfig config_;
  bool mid_line_ = false;
  CallCount milestones_emitted_ = 0;
};

/// Forwards search events to a Reporter according to its config.
class ReportingSink final : public ProgressSink {
 public:
  explicit ReportingSink(Reporter& reporter, std::function<bool()> cancel = {})
      : reporter_(reporter), cancel_(std::move(cancel)) {}

  void on_calls_milestone(CallCount total_calls) override;
  void on_first_move_result(Position first, Outcome outcome, CallCount calls) override;
  void on_third_move_enter(Position first, Position third) override;
  void on_third_move_exit(int win_digit) override;
  bool poll_cancel() override { return cancel_ && cancel_(); }

 private:
  Reporter& reporter_;
  std::function<bool()> cancel_;
};

}  // namespace qpgame
