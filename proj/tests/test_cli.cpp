#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace supertrop {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "supertrop");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SUPERTROP_TEST_DATA) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Cli, Eval) {
  const auto r = run({"eval", "--expr", "t2 + t2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "g2\n");
  EXPECT_EQ(run({"eval", "--expr", "t2 +"}).code, 1);
}

TEST(Cli, Gs) {
  EXPECT_EQ(run({"gs", "--x", "g3", "--y", "t2"}).out, "true\n");
  EXPECT_EQ(run({"gs", "--x", "t3", "--y", "t2"}).out, "false\n");
}

TEST(Cli, Audit) {
  const auto r = run({"audit", "--table", data("boolean.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("supertropical").get<bool>());
  EXPECT_TRUE(j.at("tangibles").empty());
  const auto f2 = nlohmann::json::parse(run({"audit", "--table", data("f2.json")}).out);
  EXPECT_FALSE(f2.at("supertropical").get<bool>());
  EXPECT_EQ(run({"audit", "--table", data("missing.json")}).code, 1);
}

TEST(Cli, Homomorphisms) {
  const auto r = run({"homomorphisms", "--src", data("three_element.json"), "--dst", data("boolean.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("count"), 1);
  const auto refused =
      run({"homomorphisms", "--src", data("three_element.json"), "--dst", data("boolean.json"), "--max-size", "2"});
  EXPECT_EQ(refused.code, 1);
  EXPECT_NE(refused.err.find("refused"), std::string::npos);
}

TEST(Cli, Valuation) {
  const auto r = run({"valuation", "--valuation", "padic:2", "--random", "200", "--at", "12", "--at", "1/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("axioms").at("passed").get<bool>());
  EXPECT_EQ(j.at("values").at("12"), "-2");
  EXPECT_EQ(j.at("values").at("1/2"), "1");
  EXPECT_EQ(run({"valuation", "--valuation", "padic:6"}).code, 1);
  EXPECT_EQ(run({"valuation", "--pairs", data("pairs.json"), "--source", "Qplus"}).code, 1);
}

TEST(Cli, Supervaluation) {
  for (const char* check : {"check-cover", "check-strong", "check-tangible"}) {
    EXPECT_EQ(run({"supervaluation", check, "--random", "200"}).code, 0) << check;
  }
  const auto ghost = run({"supervaluation", "check-tangible", "--kind", "ghost", "--random", "50"});
  EXPECT_EQ(ghost.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(ghost.out).at("holds").get<bool>());
  EXPECT_EQ(run({"supervaluation", "check-bogus"}).code, 1);
}

TEST(Cli, Dominance) {
  EXPECT_EQ(run({"dominance", "--witness", data("dominance_ghost_map.json")}).code, 0);
  EXPECT_EQ(run({"dominance", "--witness", data("dominance_bad.json")}).code, 2);
}

TEST(Cli, Tropicalize) {
  const auto r = run({"tropicalize", "--poly", "x^2 - 6*x + 8", "--valuation", "padic:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("coefficients"), (nlohmann::json{{"2", "0"}, {"1", "-1"}, {"0", "-3"}}));
  EXPECT_EQ(j.at("lifted").at("0"), "t-3");
  EXPECT_EQ(run({"tropicalize", "--poly", "x^"}).code, 1);
}

TEST(Cli, CornerLocusCsvAndSvg) {
  const auto r = run({"corner-locus", "--poly", "x^2 - 6*x + 8", "--valuation", "padic:2", "--grid", "x=-4..1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "point,member\n-4,false\n-3,false\n-2,true\n-1,true\n0,false\n1,false\n");

  const auto dir = std::filesystem::temp_directory_path() / "supertrop_cli_test";
  std::filesystem::create_directories(dir);
  const auto svg = (dir / "locus.svg").string(), csv = (dir / "locus.csv").string();
  const std::vector<std::string> args{"corner-locus", "--poly", "x - y", "--grid", "x=-2..2,y=-2..2",
                                      "--csv", csv, "--svg", svg};
  ASSERT_EQ(run(args).code, 0);
  const auto first = slurp(svg);
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(svg), first);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 5 + 4);
  EXPECT_NE(slurp(csv).find("-2;-2,true"), std::string::npos);
  EXPECT_EQ(run({"corner-locus", "--poly", "x", "--grid", "x=0..1:0"}).code, 1);
}

TEST(Cli, VerifyTheorem51) {
  const auto a = run({"verify", "theorem51", "--count", "60", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 60);
  const auto first = nlohmann::json::parse(a.out.substr(0, a.out.find('\n')));
  EXPECT_EQ(first.at("index"), 0);
  EXPECT_FALSE(first.at("refuted").get<bool>());
  EXPECT_EQ(run({"verify", "theorem51", "--count", "60", "--seed", "7", "--threads", "3"}).out, a.out);
  EXPECT_NE(run({"verify", "theorem51", "--count", "60", "--seed", "8"}).out, a.out);
  EXPECT_EQ(run({"verify", "theorem51", "--p", "4"}).code, 1);
}

TEST(Cli, VerifyKapranov) {
  const auto single = run({"verify", "kapranov", "--poly", "x^2 - 6*x + 8", "--root", "2", "--p", "2"});
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_TRUE(nlohmann::json::parse(single.out).at("member").get<bool>());
  EXPECT_EQ(run({"verify", "kapranov", "--poly", "x1 - x2", "--root", "3,3", "--p", "3"}).code, 0);
  EXPECT_EQ(run({"verify", "kapranov", "--poly", "x^2 - 6*x + 8", "--root", "3"}).code, 1);
  const auto batch = run({"verify", "kapranov", "--count", "30", "--p", "2,5"});
  EXPECT_EQ(batch.code, 0);
  EXPECT_EQ(std::count(batch.out.begin(), batch.out.end(), '\n'), 30);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"verify", "nothing"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"eval"}).code, 1);
}

}  // namespace
}  // namespace supertrop
