#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace qpgame::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,        // I/O errors, table violations
  kUsage = 2,          // bad arguments or preconditions
  kInconclusive = 3,   // a restricted search could not decide the game
  kCancelled = 130,    // interrupted
};

/// Set asynchronously (e.g. from a SIGINT handler) to abort the running command.
std::atomic<bool>& cancel_flag();

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace qpgame::cli
