#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "json.hpp"

namespace qpgame {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string mask_calls(const std::string& text) {
  static const std::regex calls("Sum of calls: [0-9]+");
  return std::regex_replace(text, calls, "Sum of calls: <N>");
}

// Each test runs in a fresh directory so the default listing path is isolated.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    previous_ = fs::current_path();
    dir_ = fs::temp_directory_path() /
           ("qpgame_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    fs::current_path(dir_);
    unsetenv("QPGAME_LISTING");
    cli::cancel_flag() = false;
  }
  void TearDown() override {
    fs::current_path(previous_);
    fs::remove_all(dir_);
  }

  int run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    out_.str("");
    err_.str("");
    return cli::run(args, in, out_, err_);
  }

  fs::path previous_;
  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(Cli, DefaultCheckMatchesGoldenListing) {
  ASSERT_EQ(run({"check", "--json", "results.json"}), cli::kOk) << err_.str();
  const std::string golden = read_file(fs::path(QPGAME_TEST_GOLDEN) / "check_default.lst");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(mask_calls(read_file("QPGAME.LST")), golden);

  const auto json = nlohmann::json::parse(read_file("results.json"));
  EXPECT_EQ(json["status"], "completed");
  ASSERT_EQ(json["cases"].size(), 4u);
  const int expected_winner[] = {1, 1, 2, 2};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(json["cases"][i]["n"], 6 + 2 * i);
    EXPECT_EQ(json["cases"][i]["winner"], expected_winner[i]);
    EXPECT_GT(json["cases"][i]["calls"].get<std::uint64_t>(), 0u);
  }
}

TEST_F(Cli, StreamCarriesProgressButListingDoesNot) {
  ASSERT_EQ(run({"check", "--min", "8", "--max", "8", "--progress-interval", "500",
                 "--third-move-markers", "--listing", "custom.lst"}),
            cli::kOk);
  EXPECT_NE(out_.str().find('+'), std::string::npos);
  EXPECT_NE(out_.str().find("[1: (3,3)] 3: "), std::string::npos);
  const std::string listing = read_file("custom.lst");
  // The hint line mentions '+'; progress marks themselves never reach the listing.
  EXPECT_EQ(listing.find("++"), std::string::npos);
  EXPECT_EQ(listing.find("\n+"), std::string::npos);
  EXPECT_EQ(listing.find("[1:"), std::string::npos);
  EXPECT_FALSE(fs::exists("QPGAME.LST"));
}

TEST_F(Cli, ListingPathFromEnvironment) {
  setenv("QPGAME_LISTING", "env.lst", 1);
  ASSERT_EQ(run({"check", "--min", "6", "--max", "6"}), cli::kOk);
  EXPECT_TRUE(fs::exists("env.lst"));
  unsetenv("QPGAME_LISTING");
}

TEST_F(Cli, OddStrategyIncludesOddSizes) {
  ASSERT_EQ(run({"check", "--min", "5", "--max", "7", "--odd-strategy", "--no-progress"}), cli::kOk);
  const std::string listing = read_file("QPGAME.LST");
  EXPECT_NE(listing.find("Starting search with n = 5"), std::string::npos);
  EXPECT_NE(listing.find("Starting search with n = 7"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), cli::kUsage);
  EXPECT_EQ(run({"check", "--min", "9", "--max", "3"}), cli::kUsage);
  EXPECT_EQ(run({"check", "--bogus"}), cli::kUsage);
  EXPECT_EQ(run({"demo", "--n", "4", "--strategy", "mirror-odd"}), cli::kUsage);
  EXPECT_NE(err_.str().find("odd"), std::string::npos);
  EXPECT_EQ(run({"tables-generate", "--n", "6", "--out", "t.txt"}), cli::kUsage);
  EXPECT_EQ(run({"--help"}), cli::kOk);
}

TEST_F(Cli, CancelledCheckKeepsListing) {
  cli::cancel_flag() = true;
  EXPECT_EQ(run({"check", "--min", "12", "--max", "12"}), cli::kCancelled);
  const std::string listing = read_file("QPGAME.LST");
  EXPECT_NE(listing.find("== Program cancelled =="), std::string::npos);
}

TEST_F(Cli, TablesGenerateThenValidate) {
  ASSERT_EQ(run({"tables-generate", "--n", "10", "--out", "t10.txt"}), cli::kOk) << err_.str();
  EXPECT_EQ(run({"tables-validate", "--in", "t10.txt", "--deep"}), cli::kOk) << err_.str();
  EXPECT_EQ(run({"check", "--min", "10", "--max", "10", "--tables", "t10.txt"}), cli::kOk);
  EXPECT_NE(read_file("QPGAME.LST").find("Result of player 1: loss"), std::string::npos);
}

TEST_F(Cli, TablesValidateRejectsBadFiles) {
  const fs::path fixtures = QPGAME_TEST_FIXTURES;
  EXPECT_EQ(run({"tables-validate", "--in", (fixtures / "tables_n4.txt").string()}), cli::kOk);
  EXPECT_EQ(run({"tables-validate", "--in", (fixtures / "tables_corrupt.txt").string()}), cli::kFailure);
  EXPECT_EQ(run({"tables-validate", "--in", (fixtures / "tables_n4_violation.txt").string()}),
            cli::kFailure);
  EXPECT_NE(err_.str().find("T[0][0]"), std::string::npos);
}

TEST_F(Cli, DemoAgainstRandomAndStdin) {
  ASSERT_EQ(run({"demo", "--n", "7", "--seed", "3"}), cli::kOk);
  EXPECT_NE(out_.str().find("Player 1 wins"), std::string::npos);

  // The first two inputs are rejected with a reason, the third is played, and
  // a row-major sweep of the board supplies the rest of the game.
  std::string input = "x y\n2 4\n0 1\n";
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) input += std::to_string(r) + ' ' + std::to_string(c) + '\n';
  }
  ASSERT_EQ(run({"demo", "--n", "5", "--adversary", "stdin"}, input), cli::kOk);
  const std::string text = out_.str();
  EXPECT_NE(text.find("Please enter a row and a column"), std::string::npos);
  EXPECT_NE(text.find("Illegal move (2,4): shares a row with the queen at (2,2)"), std::string::npos);
  EXPECT_NE(text.find("3: (4,3)"), std::string::npos);
}

TEST_F(Cli, ServeOnEphemeralPortStopsOnInterrupt) {
  std::istringstream in;
  std::ostringstream out, err;
  std::thread server([&] { cli::run({"serve", "--port", "0"}, in, out, err); });
  std::this_thread::sleep_for(std::chrono::milliseconds(300));
  cli::cancel_flag() = true;
  server.join();
  static const std::regex listening("Listening on http://127\\.0\\.0\\.1:([0-9]+)");
  std::smatch m;
  const std::string text = out.str();
  ASSERT_TRUE(std::regex_search(text, m, listening)) << text << err.str();
  EXPECT_GT(std::stoi(m[1]), 0);
  EXPECT_NE(text.find("Server stopped."), std::string::npos);
}

}  // namespace
}  // namespace qpgame
