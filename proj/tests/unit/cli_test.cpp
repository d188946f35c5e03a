#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "emu/io.hpp"

namespace emu {
namespace {

const std::string kGame = EMU_FIXTURES_DIR "/g1.game";
const std::string kPriorities = EMU_FIXTURES_DIR "/g1_buchi.priorities";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SolveBuchi) {
  CliRun r = run({"solve", kGame, "--builtin", "buchi", "--param", "J=y", "--bound", "2", "--state", "x & y"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x=1 y=1  0\n"), std::string::npos) << r.out;
  r = run({"solve", kGame, "--builtin", "buchi", "--param", "J=y", "--bound", "0", "--state", "x & y"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("x=1 y=1  inf\n"), std::string::npos) << r.out;
  r = run({"solve", kGame, "--builtin", "buchi", "--param", "J=y", "--bound", "inf", "--state", "x & y"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("effective 38"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("x=1 y=1  0\n"), std::string::npos) << r.out;
}

TEST(Cli, SolveUsesGameFormulaByDefault) {
  const CliRun r = run({"solve", kGame, "--bound", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("W_sys: 4 states, W_env: 0 states"), std::string::npos) << r.out;
}

TEST(Cli, SolveJson) {
  const CliRun r = run({"solve", kGame, "--formula", "nu X . <>X", "--bound", "1", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("schema"), 1);
  EXPECT_EQ(doc.at("effective_bound"), 1);
  const SolveReport back = report_from_json(r.out);
  EXPECT_TRUE(back.min_credits.is_constant(EnergyValue::zero()));
}

TEST(Cli, Bound) {
  CliRun r = run({"bound", kGame, "--builtin", "safety"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bound: 118\n"), std::string::npos) << r.out;
  r = run({"bound", kGame, "--builtin", "buchi", "--param", "J=y"});
  EXPECT_NE(r.out.find("bound: 38\n"), std::string::npos) << r.out;
  r = run({"bound", kGame, "--priorities", kPriorities});
  EXPECT_NE(r.out.find("bound: 38\n"), std::string::npos) << r.out;
  r = run({"bound", kGame, "--builtin", "safety", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(r.out).at("bound"), 118);
}

TEST(Cli, Region) {
  CliRun r = run({"region", kGame, "--builtin", "buchi", "--param", "J=y", "--bound", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("W_sys (4 states)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("W_env (0 states)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("total: 4 of 4"), std::string::npos);
  r = run({"region", kGame, "--builtin", "buchi", "--param", "J=y", "--bound", "0"});
  EXPECT_NE(r.out.find("W_env (4 states)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("  x & y\n"), std::string::npos) << r.out;
}

TEST(Cli, Check) {
  CliRun r = run({"check", "--seed", "7", "--cases", "30", "--max-vars", "4", "--max-weight", "2", "--max-bound", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("summary: 30 cases, 0 mismatches, 0 errors"), std::string::npos);
  EXPECT_EQ(run({"check", "--seed", "7", "--cases", "30"}).out, r.out);
  r = run({"check", "--oracle", "parity", "--seed", "7", "--cases", "30"});
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, CheckMutationDumpsCounterexample) {
  const auto dir = std::filesystem::temp_directory_path() / "emu_cli_test";
  std::filesystem::create_directories(dir);
  const CliRun r = run({"check", "--seed", "7", "--cases", "3", "--mutate", "--dump-dir", dir.string()});
  EXPECT_EQ(r.code, 3);
  const auto file = dir / "counterexample-seed7-case0.game";
  ASSERT_TRUE(std::filesystem::exists(file));
  const auto g = load_game(file.string());
  EXPECT_TRUE(g.formula());
  std::filesystem::remove_all(dir);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "/nonexistent.game"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--bound", "x"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--formula", "nu X . <>X", "--builtin", "safety"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--param", "J=y"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--builtin", "buchi", "--param", "Jy"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--formula", "mu X . !X"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--formula", "nu X . []X"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--state", "z"}).code, 2);
  EXPECT_EQ(run({"solve", kGame, "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"check", "--oracle", "other"}).code, 2);
  EXPECT_EQ(run({"check", "--max-vars", "30"}).code, 2);
  const CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("solve"), std::string::npos);
}

}  // namespace
}  // namespace emu
