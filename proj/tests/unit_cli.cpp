#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "contologic/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

std::string fixture(const char* name) { return (std::filesystem::path(FIXTURE_DIR) / name).string(); }

Run cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"contologic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = contologic::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, PassingReportsExitZero) {
  auto r = cli({"rank", "--space", fixture("tree_a.json"), "--eps", "1/8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rank: 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: pass"), std::string::npos);
}

TEST(Cli, FailedCertificateExitsOne) {
  auto r = cli({"certify-dist", "--structure", fixture("path3.json"), "--predicate", "A"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verdict: fail"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(cli({"no-such-verb"}).code, 2);
  EXPECT_EQ(cli({"rank", "--space", fixture("missing.json"), "--eps", "1/8"}).code, 2);
  EXPECT_EQ(cli({"rank", "--space", fixture("tree_a.json"), "--eps", "0.125"}).code, 2);
  auto r = cli({"translate-copy", "--group", fixture("z4sub.json"), "--X", "0,1,2,3", "--Y", "0,1,2,3", "--eps",
                "0", "--y0", "2", "--r", "1/4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, JsonReport) {
  auto r = cli({"--json", "rank", "--space", fixture("tree_a.json"), "--eps", "3/10"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(j["verdict"], "pass");
}

TEST(Cli, GoldenComparison) {
  auto base = cli({"rank", "--space", fixture("tree_a.json"), "--eps", "1/8"});
  auto path = std::filesystem::temp_directory_path() / "contologic_golden_test.txt";
  std::ofstream(path, std::ios::binary) << base.out;
  EXPECT_EQ(cli({"--golden", path.string(), "rank", "--space", fixture("tree_a.json"), "--eps", "1/8"}).code, 0);
  std::ofstream(path, std::ios::binary) << base.out << "extra\n";
  EXPECT_EQ(cli({"--golden", path.string(), "rank", "--space", fixture("tree_a.json"), "--eps", "1/8"}).code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"repair-metric", "--structure", fixture("triphi.json")};
  EXPECT_EQ(cli(args).out, cli(args).out);
}

TEST(Cli, Demo) {
  auto r = cli({"demo"});
  EXPECT_EQ(r.code, 0);
  auto s = cli({"--json", "demo", "--sample", "inf:0"});
  ASSERT_EQ(s.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(s.out).empty());
  EXPECT_NE(s.out.find("0/1"), std::string::npos);
}
