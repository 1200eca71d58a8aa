#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace assumekit;

// Self-checks for the test-side oracles.

TEST(Oracles, CanonicalCnfCounts) {
  std::size_t total = 0, unsat = 0;
  for (int n = 1; n <= 3; ++n)
    for (int c = 1; c <= 4; ++c)
      for (const Cnf& f : oracle::canonical_cnfs(n, c)) {
        ++total;
        unsat += !f.solve();
        f.validate();
      }
  EXPECT_EQ(total, 536u);
  EXPECT_EQ(unsat, 79u);
  // One variable: (x), (x)(-x) up to polarity.
  EXPECT_EQ(oracle::canonical_cnfs(1, 1).size(), 1u);
  EXPECT_EQ(oracle::canonical_cnfs(1, 2).size(), 1u);
  EXPECT_EQ(oracle::canonical_cnfs(1, 3).size(), 0u);
}

TEST(Oracles, LtlUntilAndNextOnLassos) {
  using namespace oracle;
  const LassoWord w = parse_word("{a}|{b},{a}");
  EXPECT_EQ(eval_all(ap("a"), w), (std::vector<bool>{true, false, true}));
  EXPECT_EQ(eval_all(X(ap("a")), w), (std::vector<bool>{false, true, false}));
  EXPECT_EQ(eval_all(F(ap("b")), w), (std::vector<bool>{true, true, true}));
  EXPECT_EQ(eval_all(G(ap("a")), w), (std::vector<bool>{false, false, false}));
  EXPECT_EQ(eval_all(U(ap("a"), ap("b")), w), (std::vector<bool>{true, true, true}));
  EXPECT_EQ(eval_all(U(lnot(ap("b")), ap("c")), w), (std::vector<bool>{false, false, false}));
}

TEST(Oracles, BruteWinOnHandGames) {
  const GameFile f = oracle::load("F_BUCHI_LOOP");
  EXPECT_TRUE(oracle::brute_win(f.graph, *f.objective, Player::P1).empty());
  EXPECT_EQ(oracle::brute_win(f.graph, *f.objective, Player::P2).count(), 2u);
  const GameFile e = oracle::load("F_SAFETY_ESCAPE");
  EXPECT_EQ(oracle::brute_win(e.graph, *e.objective, Player::P2).count(), e.graph.size());
}

TEST(Oracles, StrategyEnumerationCount) {
  const GameGraph g = random_game({6, 0.4, 2, 0.0}, 9);
  std::size_t expect = 1, seen = 0;
  for (StateIndex s = 0; s < g.size(); ++s)
    if (g.owner(s) == Owner::P1) expect *= g.successors(s).size();
  oracle::each_strategy(g, Owner::P1, [&](const auto&) {
    ++seen;
    return false;
  });
  EXPECT_EQ(seen, expect);
}
