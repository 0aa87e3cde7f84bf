#include "qpgame/reporting.hpp"

#include <ostream>
#include <stdexcept>

namespace qpgame {

std::string case_start_line(int n) { return "Starting search with n = " + std::to_string(n); }

std::string case_end_line(Outcome outcome, CallCount calls) {
  return std::string("Search completed. Result of player 1: ") +
         (outcome.winner == Player::One ? "win" : "loss") +
         ". Sum of calls: " + std::to_string(calls);
}

std::string first_move_line(Position first, bool player2_wins, CallCount calls) {
  return "pl. 1: " + to_string(first) + " -> pl. 2: " + (player2_wins ? "win" : "loss") +
         ". Sum of calls: " + std::to_string(calls);
}

std::string third_move_enter_text(Position first, Position third) {
  return "[1: " + to_string(first) + "] 3: " + to_string(third);
}

std::string third_move_exit_text(int win_digit) { return " -> " + std::to_string(win_digit); }

Reporter::Reporter(std::ostream& stream, ReportConfig config)
    : stream_(stream),
      owned_listing_(std::make_unique<std::ofstream>(config.listing_path, std::ios::trunc)),
      listing_(owned_listing_.get()),
      config_(std::move(config)) {
  if (!*owned_listing_) {
    throw std::runtime_error("cannot open listing file " + config_.listing_path.string());
  }
}

Reporter::Reporter(std::ostream& stream, std::ostream& listing, ReportConfig config)
    : stream_(stream), listing_(&listing), config_(std::move(config)) {}

void Reporter::check_listing() {
  if (!*listing_) throw std::runtime_error("write failed on listing " + config_.listing_path.string());
}

void Reporter::end_partial_line() {
  if (mid_line_) {
    stream_ << '\n';
    mid_line_ = false;
  }
}

void Reporter::stream_line(const std::string& line) {
  end_partial_line();
  stream_ << line << '\n';
  stream_.flush();
}

void Reporter::both(const std::string& line) {
  stream_line(line);
  *listing_ << line << '\n';
  listing_->flush();
  check_listing();
}

void Reporter::write_header(const std::string& version) {
  both("=== Checking solutions for the queens placing game problem ===");
  both("=== qpgame " + version + " ===");
  both("");
  both("Hints:");
  const auto& path = config_.listing_path;
  if (path.has_parent_path()) {
    both("  Output listing into file " + path.string() + ".");
  } else {
    both("  Output listing into file " + path.string() + " within the working directory.");
  }
  if (config_.emit_progress_plus) {
    both("  After each " + std::to_string(config_.progress_interval) + " moves a + will be emitted.");
  }
  both("  To cancel the execution press Ctrl-C.");
}

void Reporter::write_case_start(int n) {
  milestones_emitted_ = 0;
  both("");
  both(case_start_line(n));
}

void Reporter::write_case_end(Outcome outcome, CallCount calls) { both(case_end_line(outcome, calls)); }

void Reporter::write_first_move_stat(Position first, bool player2_wins, CallCount calls) {
  both(first_move_line(first, player2_wins, calls));
}

void Reporter::emit_progress(CallCount total_calls) {
  if (!config_.emit_progress_plus) return;
  const CallCount due = total_calls / config_.progress_interval;
  if (due <= milestones_emitted_) return;
  stream_ << std::string(due - milestones_emitted_, '+');
  stream_.flush();
  milestones_emitted_ = due;
  mid_line_ = true;
}

void Reporter::write_third_move_enter(Position first, Position third) {
  if (!config_.indicate_third_moves_checking) return;
  end_partial_line();
  stream_ << third_move_enter_text(first, third);
  stream_.flush();
  mid_line_ = true;
}

void Reporter::write_third_move_exit(int win_digit) {
  if (!config_.indicate_third_moves_checking) return;
  stream_ << third_move_exit_text(win_digit) << '\n';
  stream_.flush();
  mid_line_ = false;
}

void Reporter::write_note(const std::string& line) { both(line); }

void Reporter::write_regular_stop() {
  both("");
  both(kRegularStopLine);
}

void Reporter::write_cancelled(CallCount calls) {
  both("Search cancelled after " + std::to_string(calls) + " calls.");
  both("");
  both(kCancelledStopLine);
}

void ReportingSink::on_calls_milestone(CallCount total_calls) { reporter_.emit_progress(total_calls); }

void ReportingSink::on_first_move_result(Position first, Outcome outcome, CallCount calls) {
  if (reporter_.config().first_move_checking_statistics) {
    reporter_.write_first_move_stat(first, outcome.winner == Player::Two, calls);
  }
}

void ReportingSink::on_third_move_enter(Position first, Position third) {
  reporter_.write_third_move_enter(first, third);
}

void ReportingSink::on_third_move_exit(int win_digit) { reporter_.write_third_move_exit(win_digit); }

}  // namespace qpgame
