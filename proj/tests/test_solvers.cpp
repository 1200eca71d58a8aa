#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace assumekit;

namespace {

StateSet naive_attractor(const GameGraph& g, Player player, const StateSet& target) {
  StateSet a = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateIndex s = 0; s < g.size(); ++s) {
      if (a.contains(s)) continue;
      bool any = false, all = true;
      for (auto t : g.successors(s)) {
        if (a.contains(t))
          any = true;
        else
          all = false;
      }
      if (owned_by(g.owner(s), player) ? any : all) {
        a.insert(s);
        changed = true;
      }
    }
  }
  return a;
}

Objective random_objective(const GameGraph& g, std::uint64_t seed) {
  StateSet t(g.size());
  for (StateIndex s = 0; s < g.size(); ++s)
    if ((seed >> (s % 16)) & 1) t.insert(s);
  switch (seed % 5) {
    case 0: return Objective::reach(t);
    case 1: return Objective::safe(t);
    case 2: return Objective::buchi(t);
    case 3: return Objective::co_buchi(t);
    default: return Objective::parity(g.priorities());
  }
}

// The strategy, completed arbitrarily outside the winning region, wins from
// every state of it against all opponent behaviour.
bool strategy_wins(const GameGraph& g, const Objective& obj, const SolveResult& r,
                   Player p) {
  const MemorylessStrategy st = (p == Player::P1 ? r.strat1 : r.strat2).completed(g);
  std::vector<StateIndex> choice(g.size(), kNoState);
  for (StateIndex s = 0; s < g.size(); ++s)
    if (st.defined(s)) choice[s] = st[s];
  const oracle::Adj adj = oracle::restrict(g, choice);
  for (auto s : r.win(p).members())
    if (oracle::opponent_refutes(adj, s, obj, p == Player::P1)) return false;
  return true;
}

}  // namespace

TEST(Attractor, SafetyEscapeFixture) {
  const GameGraph g = oracle::load("F_SAFETY_ESCAPE").graph;
  // a has no move but b, so player 2 attracts it as well
  EXPECT_EQ(ids(g, attractor(g, Player::P2, states(g, {"c"}))),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(ids(g, attractor(g, Player::P1, states(g, {"c"}))),
            (std::vector<std::string>{"c"}));
}

TEST(Attractor, MatchesNaiveFixpoint) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const GameGraph g = random_game({8, 0.3, 2, 0.0}, seed);
    StateSet t(g.size());
    for (StateIndex s = 0; s < g.size(); ++s)
      if ((seed * 7 + s) % 3 == 0) t.insert(s);
    for (Player p : {Player::P1, Player::P2})
      EXPECT_EQ(attractor(g, p, t), naive_attractor(g, p, t)) << seed;
  }
}

TEST(Solve, BuchiLoopFixture) {
  const GameFile f = oracle::load("F_BUCHI_LOOP");
  const SolveResult r = solve(f.graph, *f.objective);
  EXPECT_TRUE(r.win1.empty());
  EXPECT_EQ(r.win2.count(), 2u);
  EXPECT_EQ(r.strat2[f.graph.at("b")], f.graph.at("b"));
}

TEST(Solve, SafetyEscapeFixture) {
  const GameFile f = oracle::load("F_SAFETY_ESCAPE");
  const SolveResult r = solve(f.graph, *f.objective);
  EXPECT_TRUE(r.win1.empty());
  EXPECT_EQ(r.strat2[f.graph.at("b")], f.graph.at("c"));
}

TEST(Solve, RejectsProbabilistic) {
  const GameFile f = oracle::load("F_COIN");
  EXPECT_THROW(solve(f.graph, *f.objective), PreconditionError);
}

TEST(Solve, AgreesWithBruteForce) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const GameGraph g = random_game({5, 0.35, 1 + int(seed % 4), 0.0}, seed);
    const Objective obj = random_objective(g, seed);
    const SolveResult r = solve(g, obj);
    ASSERT_EQ(r.win1.count() + r.win2.count(), g.size());
    ASSERT_TRUE((r.win1 & r.win2).empty());
    EXPECT_EQ(r.win1, oracle::brute_win(g, obj, Player::P1)) << "seed " << seed;
    EXPECT_EQ(r.win2, oracle::brute_win(g, obj, Player::P2)) << "seed " << seed;
    EXPECT_TRUE(strategy_wins(g, obj, r, Player::P1)) << "seed " << seed;
    EXPECT_TRUE(strategy_wins(g, obj, r, Player::P2)) << "seed " << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(Solve, StrategiesOnlyInsideOwnRegion) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GameGraph g = random_game({7, 0.3, 4, 0.0}, seed);
    const SolveResult r = solve(g, Objective::parity(g.priorities()));
    for (StateIndex s = 0; s < g.size(); ++s) {
      EXPECT_EQ(r.strat1.defined(s), g.owner(s) == Owner::P1 && r.win1.contains(s));
      EXPECT_EQ(r.strat2.defined(s), g.owner(s) == Owner::P2 && r.win2.contains(s));
    }
  }
}

TEST(Cooperative, Fixtures) {
  const GameFile loop = oracle::load("F_BUCHI_LOOP");
  EXPECT_EQ(cooperative_win(loop.graph, *loop.objective).count(), 2u);
  const GameFile pipe = oracle::load("F_PIPE");
  EXPECT_EQ(ids(pipe.graph, cooperative_win(pipe.graph, pipe.priorities())),
            (std::vector<std::string>{"a", "b"}));
}

TEST(Cooperative, AgreesWithCycleEnumeration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const GameGraph g = random_game({7, 0.25, 5, 0.0}, seed);
    const PriorityMap p = g.priorities();
    EXPECT_EQ(cooperative_win(g, p), oracle::brute_cooperative(g, p)) << seed;
  }
}
