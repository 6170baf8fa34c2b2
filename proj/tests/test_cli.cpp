#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "w3sat/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr goes to /dev/null unless the
// command redirects it.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + W3SAT_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("w3sat-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kRefutable = "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n";
const std::string kSatisfiable = "[[-1, 2, 3], [1, 4, 5]]";

TEST_F(Cli, SolveRefutedExitsTen) {
  const auto r = run("solve " + file("a.cnf", kRefutable));
  EXPECT_EQ(r.code, 10);
  EXPECT_EQ(r.out.rfind("Refuted ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("db_bound 8\n"), std::string::npos);
}

TEST_F(Cli, SolveSaturatedExitsZero) {
  const auto r = run("solve " + file("b.txt", kSatisfiable));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("Saturated\nn 5\nm 2\n", 0), 0u) << r.out;
}

TEST_F(Cli, SolveReadsStandardInput) {
  const auto r = run("solve - < " + file("a.cnf", kRefutable));
  EXPECT_EQ(r.code, 10);
}

TEST_F(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("solve " + file("w.cnf", "p cnf 4 1\n1 2 3 4 0\n")).code, 2);
  EXPECT_EQ(run("solve " + file("v.cnf", "p cnf 3 1\n1 2 3 4 0\n")).code, 2);
  EXPECT_EQ(run("solve " + file("s.cnf", "p cnf 2 1\n1 q 0\n")).code, 2);
  EXPECT_EQ(run("solve " + path("missing.cnf")).code, 2);
  EXPECT_EQ(run("solve --format xml " + file("a.cnf", kRefutable)).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("oracle --max-n 1 " + file("a.cnf", kRefutable)).code, 2);
}

TEST_F(Cli, VarsWidensListUniverse) {
  const auto r = run("solve --vars 7 " + file("b.txt", kSatisfiable));
  EXPECT_NE(r.out.find("n 7\n"), std::string::npos);
  EXPECT_EQ(run("solve --vars 3 " + file("b.txt", kSatisfiable)).code, 2);
}

TEST_F(Cli, OracleVerdicts) {
  auto r = run("oracle " + file("a.cnf", kRefutable));
  EXPECT_EQ(r.code, 10);
  EXPECT_EQ(r.out.rfind("UNSAT", 0), 0u);
  r = run("oracle --method dpll " + file("b.txt", kSatisfiable));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("SAT\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\nv "), std::string::npos);
}

TEST_F(Cli, NoExpandDatabaseIsSubsetOfDefault) {
  const std::string input = file("c.cnf", "p cnf 6 4\n1 2 3 0\n-1 4 0\n-2 5 0\n-3 -4 6 0\n");
  ASSERT_EQ(run("solve --db " + path("full.db") + " " + input).code, 0);
  ASSERT_EQ(run("solve --no-expand --db " + path("narrow.db") + " " + input).code, 0);
  std::set<std::string> full;
  std::istringstream fs_in(slurp(path("full.db")));
  for (std::string line; std::getline(fs_in, line);) full.insert(line);
  std::istringstream ns_in(slurp(path("narrow.db")));
  std::size_t lines = 0;
  for (std::string line; std::getline(ns_in, line); ++lines) EXPECT_TRUE(full.contains(line)) << line;
  EXPECT_GT(lines, 4u);
  EXPECT_GT(full.size(), lines);
}

TEST_F(Cli, TraceFileReplays) {
  const std::string input = file("a.cnf", kRefutable);
  ASSERT_EQ(run("solve --trace " + path("t.trace") + " " + input).code, 10);
  const auto parsed = w3sat::parse_trace(slurp(path("t.trace")));
  ASSERT_TRUE(parsed.refuted_var.has_value());
  const auto inst = w3sat::parse_dimacs(kRefutable).instance;
  EXPECT_TRUE(w3sat::check_trace(inst, *parsed.refuted_var, parsed.steps).ok);
}

TEST_F(Cli, RecordDigestIsStable) {
  const std::string input = file("a.cnf", kRefutable);
  run("solve --record " + path("r1.json") + " " + input);
  run("solve --record " + path("r2.json") + " " + input);
  auto a = nlohmann::json::parse(slurp(path("r1.json")));
  auto b = nlohmann::json::parse(slurp(path("r2.json")));
  EXPECT_EQ(a["input_sha256"], w3sat::sha256_hex(kRefutable));
  EXPECT_EQ(a["command"], "solve");
  EXPECT_EQ(a["version"], "0.1.0");
  EXPECT_TRUE(a.contains("timestamp"));
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a, b);
}

TEST_F(Cli, CompareIsReproducibleAndHonoursSeedEnvironment) {
  const std::string args = "compare --n 6..8 --count 30 ";
  const auto flag = run(args + "--seed 5");
  const auto env = run(args, "W3SAT_SEED=5");
  const auto both = run(args + "--seed 5", "W3SAT_SEED=99");
  const auto other = run(args + "--seed 6");
  EXPECT_EQ(flag.code, 0);
  EXPECT_EQ(flag.out.rfind("seed,", 0), 0u) << flag.out.substr(0, 80);
  EXPECT_EQ(flag.out, env.out);
  EXPECT_EQ(flag.out, both.out);
  EXPECT_NE(flag.out, other.out);
  EXPECT_EQ(run(args + "--seed 5 --jobs 2").out, flag.out);
}

TEST_F(Cli, MineWithoutFindingExitsZero) {
  const auto r = run("mine --n 10..12 --budget 5 --out-dir " + path("out"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["outcome"], "NotFound");
}

TEST_F(Cli, MineReproducesKnownCounterexample) {
  const auto r = run("mine --n 39..39 --seed 2008 --budget 1 --out-dir " + path("out"));
  ASSERT_EQ(r.code, 20);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["outcome"], "Found");
  const std::string cnf = slurp(dir_ / "out" / "counterexample-seed2008.cnf");
  EXPECT_EQ(cnf, slurp(fs::path(W3SAT_TEST_DATA) / "counterexample-seed2008.cnf"));
  const auto sidecar = nlohmann::json::parse(slurp(dir_ / "out" / "counterexample-seed2008.json"));
  EXPECT_EQ(sidecar["engine_verdict"], "Saturated");
  EXPECT_EQ(sidecar["oracle_status"], "UNSAT");
  EXPECT_EQ(sidecar["one_minimal_audited"], true);
  // The persisted instance is saturated by the engine and refuted by the oracle.
  EXPECT_EQ(run("solve " + (dir_ / "out" / "counterexample-seed2008.cnf").string()).code, 0);
  EXPECT_EQ(run("oracle --method dpll " + (dir_ / "out" / "counterexample-seed2008.cnf").string()).code, 10);
}

TEST_F(Cli, ExportDot) {
  const auto r = run("export-dot " + file("a.cnf", kRefutable));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  const auto s = run("export-dot " + file("b.txt", kSatisfiable));
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(s.out.empty());
}

TEST_F(Cli, LemmaWitnessesReplay) {
  const auto r = run("lemmas --lemma 5.12 --k 4 --n 8 --trials 400 --seed 3 --witnesses " + path("w.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("lemma,k,n,trials,degenerate,premise_matches,target_derived_at_reduced_width,failures\r\n", 0),
            0u);
  const auto witnesses = nlohmann::json::parse(slurp(path("w.json")));
  ASSERT_TRUE(witnesses.is_array());
  for (std::size_t i = 0; i < witnesses.size() && i < 3; ++i) {
    const auto& w = witnesses[i];
    const auto replay = run("lemmas --lemma 5.12 --k 4 --n 8 --replay " + std::to_string(w["trial_seed"].get<std::uint64_t>()));
    ASSERT_EQ(replay.code, 0);
    const auto rep = nlohmann::json::parse(replay.out);
    EXPECT_EQ(rep["outcome"], "Failed");
    EXPECT_EQ(rep["premises"], w["premises"]);
    EXPECT_EQ(rep["target"], w["target"]);
  }
}

TEST_F(Cli, BenchCsv) {
  const auto r = run("bench --n 5 --seeds 2");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 3u);
}

TEST_F(Cli, HelpMentionsUniverseNote) {
  const auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("variable universe is 1..n"), std::string::npos);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

}  // namespace
