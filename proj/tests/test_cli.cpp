#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "support/oracles.hpp"

using namespace assumekit;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + quote(ASSUMEKIT_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return quote(oracle::fixture_path(name)); }

Json result(const Outcome& r) { return Json::parse(r.out).at("result"); }

std::string payload(const Outcome& r) {
  Json j = Json::parse(r.out);
  j.erase("timing_ms");
  return j.dump();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("assumekit_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, SolveBuchiLoop) {
  const Outcome r = run("solve " + fx("F_BUCHI_LOOP.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("result").at("kind"), "sure");
  EXPECT_TRUE(j.at("result").at("win1").empty());
  EXPECT_EQ(j.at("input_digest").get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_TRUE(j.at("seed").is_null());
  EXPECT_TRUE(j.contains("timing_ms"));
}

TEST(Cli, SolveCoin) {
  const Outcome r = run("solve " + fx("F_COIN.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(result(r).at("as"), Json({"v", "w", "x"}));
}

TEST(Cli, SolveObjectiveOverride) {
  const Outcome r = run("solve " + fx("F_SAFETY_ESCAPE.json") + " --objective reach --target c");
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(result(r).at("win1").empty());
  EXPECT_EQ(run("solve " + fx("F_SAFETY_ESCAPE.json") + " --objective nope").code, 2);
}

TEST(Cli, AssumeModes) {
  Outcome r = run("assume --mode safety " + fx("F_SAFETY_ESCAPE.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(result(r).at("edges"), Json::parse(R"([["b","c"]])"));
  r = run("assume --mode fair --state a " + fx("F_BUCHI_LOOP.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(result(r).at("edges"), Json::parse(R"([["b","a"]])"));
  r = run("assume " + fx("F_RCG.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(result(r).at("empty").get<bool>());
  EXPECT_EQ(result(r).at("fair"), Json::parse(R"([["e10","s10r"]])"));
}

TEST(Cli, AssumeWritesAutomatonForMember) {
  const std::string out = temp_file("rcg_automaton.json", "");
  ASSERT_EQ(run("assume " + fx("F_RCG.json") + " -o " + quote(out)).code, 0);
  Outcome r = run("member " + quote(out) + " --word '|{}'");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(result(r).at("accepted").get<bool>());
  r = run("member " + quote(out) + " --word '{req}|{cancel}'");
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(result(r).at("accepted").get<bool>());
  EXPECT_EQ(result(r).at("word"), "{req}|{cancel}");
  EXPECT_EQ(run("member " + quote(out) + " --word '|{req'").code, 2);
  EXPECT_EQ(run("member " + quote(out) + " --word '|{zzz}'").code, 2);
}

TEST(Cli, Check) {
  Outcome r = run("check " + fx("F_BUCHI_LOOP.json") + " --fair-edges 'b->a' --state a");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(result(r).at("sufficient").get<bool>());
  r = run("check " + fx("F_BUCHI_LOOP.json") + " --fair-edges '' --state a");
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(result(r).at("sufficient").get<bool>());
  EXPECT_EQ(run("check " + fx("F_BUCHI_LOOP.json") + " --fair-edges 'a->z'").code, 2);
  EXPECT_EQ(run("check " + fx("F_BUCHI_LOOP.json") + " --fair-edges 'ba'").code, 2);
}

TEST(Cli, GenThreeSat) {
  const Outcome r = run("gen --three-sat " + fx("cnf/single.cnf"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(result(r).at("states"), 10);
  EXPECT_EQ(result(r).at("k"), 1);
  EXPECT_EQ(result(r).at("initial"), "11");
  // The embedded game parses back to the same graph.
  const GameFile back = parse_game(result(r).at("game").dump());
  EXPECT_EQ(back.graph, gen_3sat_game(Cnf{1, {{1}}}).graph);
  EXPECT_EQ(run("gen --three-sat " + fx("cnf/malformed.cnf")).code, 2);
  EXPECT_EQ(run("gen --three-sat /nonexistent.cnf").code, 2);
}

TEST(Cli, GenRandomSeeds) {
  const std::string args = "gen --random --states 7 --density 0.3 --priorities 3";
  const Outcome a = run(args + " --seed 5"), b = run(args + " --seed 5");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(payload(a), payload(b));
  EXPECT_EQ(Json::parse(a.out).at("seed"), 5);
  EXPECT_NE(payload(a), payload(run(args + " --seed 6")));
  EXPECT_EQ(Json::parse(run(args).out).at("seed"), 1);
  const Outcome env = run(args, "ASSUMEKIT_SEED=5");
  EXPECT_EQ(result(env), result(a));
  EXPECT_EQ(run(args, "ASSUMEKIT_SEED=abc").code, 2);
  EXPECT_EQ(run("gen --random --states 0").code, 2);
}

TEST(Cli, DeterministicPayloads) {
  for (const std::string& args :
       {"solve " + fx("F_COIN_ABS.json"), "assume " + fx("F_RCG.json"),
        "assume --mode safety " + fx("F_PIPE.json"),
        "check " + fx("F_PIPE.json") + " --fair-edges 'b->a' --state a"}) {
    const Outcome a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << args;
    EXPECT_EQ(payload(a), payload(b)) << args;
  }
}

TEST(Cli, ExitCodes) {
  const std::string empty = temp_file("empty.json", "");
  EXPECT_EQ(run("solve " + quote(empty)).code, 2);
  const std::string bad_edge = temp_file(
      "bad_edge.json", R"({"states":[{"id":"a","owner":"P1","priority":0}],"edges":[["a","q"]]})");
  EXPECT_EQ(run("solve " + quote(bad_edge)).code, 2);
  EXPECT_EQ(run("assume " + fx("F_UNSAT.json")).code, 4);
  EXPECT_EQ(run("assume " + fx("F_NOFAIR.json")).code, 5);
  EXPECT_EQ(run("assume --mode fair --state a " + fx("F_PIPE.json")).code, 5);
  EXPECT_EQ(run("assume " + fx("F_BUCHI_LOOP.json")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, NoStdoutOnFailure) {
  EXPECT_TRUE(run("assume " + fx("F_UNSAT.json")).out.empty());
  EXPECT_TRUE(run("solve /nonexistent.json").out.empty());
}

TEST(Cli, Dot) {
  const Outcome r = run("solve --dot " + fx("F_PIPE.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  const Outcome a = run("assume --dot " + fx("F_RCG.json"));
  EXPECT_NE(a.out.find("style=bold"), std::string::npos);
}
