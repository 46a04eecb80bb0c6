#include "symtail/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace symtail::cli;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(SYMTAIL_FIXTURES) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string csv;
  std::string diag;
};

Outcome run_cmd(Command c, const std::string& input, RunSpec extra = {}) {
  const fs::path out = fs::temp_directory_path() / ("symtail_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                    ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".csv");
  fs::remove(out);
  extra.command = c;
  extra.input_path = fixture(input);
  extra.output_path = out.string();
  std::ostringstream diag;
  const int code = run(extra, diag);
  return {code, fs::exists(out) ? slurp(out) : "", diag.str()};
}

int tool_exit(const std::string& args) {
  const std::string cmd = std::string(SYMTAIL_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, BoundFixedP) {
  const auto o = run_cmd(Command::bound, "bound_p.json");
  EXPECT_EQ(o.code, kOk);
  EXPECT_EQ(o.csv,
            "t,h,m,nagaev,nagaev_decimal,improved,improved_decimal,kanter_sup,kanter_sup_decimal,note\n"
            "0,1,1,1/8,0.125,5/8,0.625,3/8,0.375,\n"
            "1,1,2,1/8,0.125,1/4,0.25,3/4,0.75,\n"
            "3/2,1,2,1/8,0.125,1/4,0.25,3/4,0.75,\n"
            "2,1,3,1/8,0.125,1/8,0.125,7/8,0.875,\n"
            "3,1,,,,,,,,\"domain: t = 3 outside [0, n h) with n = 3, h = 1\"\n");
}

TEST(Cli, BoundOptimizesH) {
  const auto o = run_cmd(Command::bound, "bound_optimize.json");
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.csv.find("\n1,2,1,65/256,0.25390625,65/128,0.5078125,63/128,0.4921875,h optimized\n"), std::string::npos)
      << o.csv;
}

TEST(Cli, SweepSmall) {
  const auto o = run_cmd(Command::sweep, "sweep_small.json");
  EXPECT_EQ(o.code, kOk) << o.diag;
  EXPECT_NE(o.csv.find("rademacher3,1,1/4,0.25,1/4,0.25,0,0\n"), std::string::npos);
}

TEST(Cli, SweepCorruptedBoundExitsOne) {
  const auto o = run_cmd(Command::sweep, "sweep_corrupted.json");
  EXPECT_EQ(o.code, kViolation);
  EXPECT_NE(o.csv.find("inflated,0,1/2,0.5,13/32,0.40625,-3/32,-0.09375"), std::string::npos);
  EXPECT_NE(o.diag.find("violation"), std::string::npos);
}

TEST(Cli, SweepFamilySummary) {
  const auto o = run_cmd(Command::sweep, "sweep_family.json");
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.diag.find("0 violations"), std::string::npos);
}

TEST(Cli, SweepMaxNCap) {
  RunSpec s;
  s.max_n = 2;
  EXPECT_EQ(run_cmd(Command::sweep, "sweep_small.json", s).code, kUsage);
}

TEST(Cli, SweepMaxWidthCap) {
  RunSpec s;
  s.max_width = 2;
  const auto o = run_cmd(Command::sweep, "sweep_small.json", s);
  EXPECT_EQ(o.code, kUsage);
  EXPECT_NE(o.diag.find("cap exceeded"), std::string::npos);
}

TEST(Cli, KleitmanEquality) {
  const auto o = run_cmd(Command::kleitman, "kleitman_equality.json");
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.csv.find("equality-n10-m2,absolute,1,10,2,462,462,0,ok\n"), std::string::npos);
}

TEST(Cli, KleitmanRandomIsSeeded) {
  RunSpec s;
  s.seed = 7;
  const auto a = run_cmd(Command::kleitman, "kleitman_random.json", s);
  const auto b = run_cmd(Command::kleitman, "kleitman_random.json", s);
  s.seed = 8;
  const auto c = run_cmd(Command::kleitman, "kleitman_random.json", s);
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_NE(a.csv, c.csv);
}

TEST(Cli, KleitmanExplicit) {
  const auto o = run_cmd(Command::kleitman, "kleitman_instances.json");
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.csv.find("plane,euclidean,2,4,2,3,10,7,ok"), std::string::npos);
}

TEST(Cli, CompareExample) {
  const auto o = run_cmd(Command::compare, "compare_example.json");
  EXPECT_EQ(o.code, kOk) << o.diag;
  EXPECT_NE(o.csv.find("lattice-mismatch,pruss,1,1/2,0.5,1,1,ok"), std::string::npos);
  EXPECT_NE(o.csv.find("lattice-mismatch,birnbaum,2,,,,,hypothesis_violated; conclusion fails"), std::string::npos);
}

TEST(Cli, Tighten) {
  const auto o = run_cmd(Command::tighten, "tighten_cases.json");
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.csv.find("pair,1,1/4,0.25,1/2,0.5,"), std::string::npos);
}

TEST(Cli, MalformedInputs) {
  EXPECT_EQ(run_cmd(Command::bound, "bad_schema.json").code, kUsage);
  EXPECT_EQ(run_cmd(Command::bound, "does_not_exist.json").code, kUsage);
  EXPECT_EQ(run_cmd(Command::bound, "not_json.txt").code, kUsage);
}

TEST(Cli, ProcessExitCodes) {
  const std::string out = (fs::temp_directory_path() / "symtail_cli_proc.csv").string();
  EXPECT_EQ(tool_exit("sweep --input " + fixture("sweep_small.json") + " --output " + out), 0);
  EXPECT_EQ(tool_exit("sweep --input " + fixture("sweep_corrupted.json") + " --output " + out), 1);
  EXPECT_EQ(tool_exit("bound --input " + fixture("bad_schema.json") + " --output " + out), 2);
  EXPECT_EQ(tool_exit("bound --output " + out), 2);
  EXPECT_EQ(tool_exit("frobnicate"), 2);
  EXPECT_EQ(tool_exit("sweep --input " + fixture("sweep_small.json") + " --output " + out + " --max-n 0"), 2);
  EXPECT_EQ(tool_exit("--help"), 0);
}
