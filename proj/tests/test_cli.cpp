#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treedet/cli.hpp"

using namespace treedet;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ExampleGolden) {
  const auto a = run({"example", "1.1"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, slurp(std::filesystem::path(TREEDET_GOLDEN_DIR) / "example_1_1.txt"));
  const auto b = run({"example", "1.2"});
  EXPECT_EQ(b.code, kExitOk);
  EXPECT_EQ(b.out, slurp(std::filesystem::path(TREEDET_GOLDEN_DIR) / "example_1_2.txt"));
}

TEST(Cli, ExampleJson) {
  const auto r = run({"example", "1.1", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["lhs"], "q^2 + 2*q + 1");
  EXPECT_EQ(j["equal"], false);
  EXPECT_EQ(j["reproduced"], true);
  EXPECT_EQ(run({"example", "2.7"}).code, kExitConfig);
}

TEST(Cli, VerifyNewNqExample) {
  const auto r = run({"verify", "--identity", "new_nq", "--example", "1.2", "--format", "json", "--no-timing"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["lhs"], "q^5 + 5*q^4 + 10*q^3 + 10*q^2 + 5*q + 1");
  EXPECT_EQ(j["equal"], true);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  const auto sym = run({"verify", "--identity", "new_nq", "--example", "1.2", "--x", "x", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(sym.out)["rhs"],
            "-q^6*x - 4*q^5*x + q^5 - 5*q^4*x + 5*q^4 + 10*q^3 + 5*q^2*x + 10*q^2 + 4*q*x + 5*q + x + 1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "--identity", "br", "--random", "--vertices", "6", "--count", "10", "--weights=-3..3"}).code,
            kExitOk);
  // Example 1.1 violates the leaf hypothesis.
  EXPECT_EQ(run({"verify", "--identity", "new_nq", "--example", "1.1"}).code, kExitConfig);
  const auto forced = run({"verify", "--identity", "new_nq", "--example", "1.1", "--no-hypothesis-check"});
  EXPECT_EQ(forced.code, kExitUnequal);
  EXPECT_NE(forced.err.find("offending tree"), std::string::npos);
  EXPECT_NE(forced.err.find("n 4"), std::string::npos);
  EXPECT_EQ(run({"verify", "--identity", "bogus", "--example", "1.2"}).code, kExitConfig);
  EXPECT_EQ(run({"verify", "--identity", "br"}).code, kExitConfig);
  EXPECT_EQ(run({"verify", "--identity", "br", "--example", "1.2", "--path", "3"}).code, kExitConfig);
  EXPECT_EQ(run({"verify", "--identity", "br", "--tree", "/nonexistent/tree.txt"}).code, kExitConfig);
  EXPECT_EQ(run({"verify", "--identity", "br", "--random", "--vertices", "4", "--weights", "3..1"}).code, kExitConfig);
  EXPECT_EQ(run({"verify", "--identity", "br", "--exhaustive", "--vertices", "9"}).code, kExitConfig);
  EXPECT_EQ(run({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(run({}).code, kExitConfig);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, TreeFileInput) {
  const auto path = std::filesystem::temp_directory_path() / "treedet_cli_tree.txt";
  std::ofstream(path) << "# path\nn 4\n1 2 2\n2 3 -1\n3 4 3\n";
  const auto r = run({"verify", "--identity", "new_qt", "--tree", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::ofstream(path) << "n 4\n1 2 2\n2 3\n";
  const auto bad = run({"verify", "--identity", "new_qt", "--tree", path.string()});
  EXPECT_EQ(bad.code, kExitConfig);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  std::filesystem::remove(path);
}

TEST(Cli, EvaluatedMode) {
  const auto r = run({"verify", "--identity", "exp_t", "--random", "--vertices", "5", "--count", "3", "--weights=-2..2",
                      "--mode", "evaluated", "--points", "q=2,t=1/3;q=-1/2,t=4", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["points"].size(), 2u);
  EXPECT_EQ(j["points"][0], "q=2,t=1/3,x=0");
  EXPECT_EQ(run({"verify", "--identity", "exp_t", "--path", "4", "--mode", "evaluated", "--points", "t=1"}).code,
            kExitConfig);
}

TEST(Cli, JsonIsDeterministic) {
  const std::vector<std::string> args = {"verify", "--identity", "new_wq", "--random", "--vertices", "7",
                                         "--count", "8", "--weights=-4..4", "--seed", "99", "--format", "json",
                                         "--no-timing"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "1"});
  EXPECT_EQ(run(threaded).out, a.out);
}

TEST(Cli, ExhaustiveFiltersLeaves) {
  const auto r = run({"verify", "--identity", "new_qt", "--exhaustive", "--vertices", "5"});
  EXPECT_EQ(r.code, kExitOk);
  // Labeled trees on 5 vertices with v_1 and v_5 leaves: 3^3 = 27.
  EXPECT_NE(r.out.find("27 instance(s): 27 equal"), std::string::npos) << r.out;
}

TEST(Cli, Bench) {
  const auto r = run({"bench", "--sizes", "3..5", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["engines_agree"], true);
  EXPECT_EQ(run({"bench", "--engines", "gauss"}).code, kExitConfig);
}

TEST(Cli, Gen) {
  const auto r = run({"gen", "--random", "--vertices", "6", "--count", "4", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::size_t count = 0;
  for (std::string line; std::getline(lines, line); ++count) EXPECT_EQ(nlohmann::json::parse(line)["n"], 6);
  EXPECT_EQ(count, 4u);
  const auto dir = std::filesystem::temp_directory_path() / "treedet_gen_test";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"gen", "--exhaustive", "--vertices", "4", "--out", dir.string(), "--format", "tree"}).code, kExitOk);
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir), {}), 16);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"gen", "--vertices", "4"}).code, kExitConfig);
}
