#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace assumekit;

TEST(SafetyAssumption, Fixtures) {
  const GameFile esc = oracle::load("F_SAFETY_ESCAPE");
  const SafetyAssumption a = compute_safety_assumption(esc.graph, esc.priorities());
  EXPECT_EQ(ids(esc.graph, a.edges), (std::vector<IdEdge>{{"b", "c"}}));
  EXPECT_EQ(ids(esc.graph, a.safe_region), (std::vector<std::string>{"a", "b"}));
  const GameFile loop = oracle::load("F_BUCHI_LOOP");
  EXPECT_TRUE(compute_safety_assumption(loop.graph, loop.priorities()).edges.empty());
}

TEST(SafetyAssumption, SufficiencyExamples) {
  const GameFile f = oracle::load("F_SAFETY_ESCAPE");
  const GameGraph& g = f.graph;
  const PriorityMap p = f.priorities();
  EXPECT_TRUE(is_safe_sufficient(g, p, {edge(g, "b", "c")}, g.at("a")));
  EXPECT_FALSE(is_safe_sufficient(g, p, {}, g.at("a")));
}

TEST(SafetyAssumption, RestrictivenessExamples) {
  const GameFile f = oracle::load("F_SAFETY_ESCAPE");
  const GameGraph& g = f.graph;
  const PriorityMap p = f.priorities();
  EXPECT_TRUE(is_restrictive(g, p, {edge(g, "b", "a")}, g.at("a")));
  for (const auto& name : oracle::deterministic_fixtures()) {
    const GameFile h = oracle::load(name);
    const PriorityMap q = h.priorities();
    const SafetyAssumption a = compute_safety_assumption(h.graph, q);
    for (auto s : a.safe_region.members())
      EXPECT_FALSE(is_restrictive(h.graph, q, a.edges, s)) << name;
  }
}

TEST(SafetyAssumption, TransformAddsSink) {
  const GameFile pipe = oracle::load("F_PIPE");
  const PriorityMap p = pipe.priorities();
  const SafetyAssumption a = compute_safety_assumption(pipe.graph, p);
  EXPECT_EQ(ids(pipe.graph, a.edges), (std::vector<IdEdge>{{"b", "c"}}));
  const SafeTransform t = assume_safe_transform(pipe.graph, p, a.edges);
  EXPECT_EQ(t.game.size(), 4u);
  EXPECT_EQ(t.game.id(t.sink), "top");
  EXPECT_TRUE(solve(t.game, Objective::parity(t.priority)).win1.contains(t.sink));
  EXPECT_TRUE(t.game.has_edge(t.image[pipe.graph.at("b")], t.sink));
  EXPECT_FALSE(t.game.has_edge(t.image[pipe.graph.at("b")], t.image[pipe.graph.at("c")]));

  const GameFile esc = oracle::load("F_SAFETY_ESCAPE");
  const SafeTransform te = assume_safe_transform(
      esc.graph, esc.priorities(), {edge(esc.graph, "b", "c")});
  EXPECT_EQ(ids(te.game, solve(te.game, Objective::parity(te.priority)).win1),
            (std::vector<std::string>{"a", "b", "top"}));
}

TEST(SafetyAssumption, RejectsPlayer1Edges) {
  const GameFile f = oracle::load("F_SAFETY_ESCAPE");
  EXPECT_THROW(assume_safe_transform(f.graph, f.priorities(), {edge(f.graph, "a", "b")}),
               PreconditionError);
}

TEST(SafetyAssumption, EnvironmentCanAvoid) {
  const GameFile f = oracle::load("F_SAFETY_ESCAPE");
  const GameGraph& g = f.graph;
  EXPECT_TRUE(env_can_avoid(g, {edge(g, "b", "c")}, g.at("a")));
  EXPECT_FALSE(env_can_avoid(g, {edge(g, "b", "c"), edge(g, "b", "a")}, g.at("a")));
}

TEST(SafetyAssumption, PredicatesMatchDefinitions) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const GameGraph g = random_game({6, 0.3, 3, 0.0}, seed);
    const PriorityMap p = g.priorities();
    const StateSet coop = oracle::brute_cooperative(g, p);
    const EdgeSet p2 = g.player2_edges();
    const std::vector<Edge> e2(p2.begin(), p2.end());
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      EdgeSet cand;
      for (std::size_t i = 0; i < e2.size(); ++i)
        if (((seed + mask) >> (i % 8)) & 1 && (i + mask) % 3 != 0) cand.insert(e2[i]);
      for (StateIndex s = 0; s < g.size(); ++s) {
        EXPECT_EQ(is_restrictive(g, p, cand, s), oracle::brute_restrictive(g, coop, cand, s))
            << seed;
        if (coop.contains(s))
          EXPECT_EQ(is_safe_sufficient(g, p, cand, s),
                    oracle::brute_safe_sufficient(g, coop, cand, s))
              << seed;
      }
    }
  }
}

TEST(SafetyAssumption, UniqueMinimalOnFixtures) {
  for (const auto& name : oracle::deterministic_fixtures()) {
    const GameFile f = oracle::load(name);
    const PriorityMap p = f.priorities();
    EXPECT_TRUE(oracle::unique_minimal_safety(
        f.graph, p, compute_safety_assumption(f.graph, p).edges))
        << name;
  }
}

TEST(SafetyAssumption, UniqueMinimalOnRandomGames) {
  int games = 0;
  for (std::uint64_t seed = 0; games < 60; ++seed) {
    const GameGraph g = random_game({5, 0.3, 3, 0.0}, seed);
    if (g.player2_edges().size() > 10) continue;
    const PriorityMap p = g.priorities();
    EXPECT_TRUE(oracle::unique_minimal_safety(g, p, compute_safety_assumption(g, p).edges))
        << "seed " << seed;
    ++games;
  }
}
