#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace assumekit;

namespace {

bool play_wins(const SynthesisGame& sg, const LassoPlay& play) {
  const PriorityMap p = parity_of(sg.graph(), sg.objective());
  int least = 1 << 30;
  for (auto s : play.cycle) least = std::min(least, p[s]);
  return least % 2 == 0;
}

bool word_wins(const SynthesisGame& sg, const LassoWord& w) {
  return play_wins(sg, play_of_word(sg, w));
}

// Every lasso word with |stem| <= max_stem and 1 <= |cycle| <= max_cycle.
void each_word(const std::vector<Letter>& letters, std::size_t max_stem,
               std::size_t max_cycle, const std::function<void(const LassoWord&)>& visit) {
  std::function<void(std::vector<Letter>&, std::size_t, const std::function<void(const std::vector<Letter>&)>&)>
      seqs = [&](std::vector<Letter>& cur, std::size_t len,
                 const std::function<void(const std::vector<Letter>&)>& f) {
        if (cur.size() == len) return f(cur);
        for (const auto& l : letters) {
          cur.push_back(l);
          seqs(cur, len, f);
          cur.pop_back();
        }
      };
  for (std::size_t m = 0; m <= max_stem; ++m)
    for (std::size_t c = 1; c <= max_cycle; ++c) {
      std::vector<Letter> stem;
      seqs(stem, m, [&](const std::vector<Letter>& st) {
        std::vector<Letter> cyc;
        seqs(cyc, c, [&](const std::vector<Letter>& cy) { visit(LassoWord{st, cy}); });
      });
    }
}

std::vector<Letter> alphabet(const SynthesisGame& sg) {
  std::vector<std::string> props = sg.inputs();
  props.insert(props.end(), sg.outputs().begin(), sg.outputs().end());
  return all_letters(props);
}

LassoWord random_input_word(const std::vector<Letter>& letters, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(0, 3), pick(0, letters.size() - 1);
  LassoWord w;
  for (std::size_t i = len(rng); i > 0; --i) w.stem.push_back(letters[pick(rng)]);
  for (std::size_t i = len(rng) + 1; i > 0; --i) w.cycle.push_back(letters[pick(rng)]);
  return w;
}

}  // namespace

TEST(Pipeline, RcgAssumption) {
  const GameFile f = oracle::load("F_RCG");
  const PipelineResult r = combined_assumption(*f.synthesis);
  ASSERT_EQ(r.status, PipelineStatus::Ok);
  EXPECT_TRUE(r.safety.edges.empty());
  EXPECT_EQ(ids(f.graph, r.fairness.edges), (std::vector<IdEdge>{{"e10", "s10r"}}));
  EXPECT_TRUE(lasso_member(r.automaton, parse_word("|{}")));
  EXPECT_FALSE(lasso_member(r.automaton, parse_word("{req}|{cancel}")));
  EXPECT_FALSE(is_empty(r.automaton));
}

TEST(Pipeline, RcgGameEncodesSpec) {
  // The fixture's Büchi objective and the LTL formula agree on all short
  // lassos over {req, cancel, grant}.
  const GameFile f = oracle::load("F_RCG");
  const SynthesisGame& sg = *f.synthesis;
  const auto spec = oracle::rcg_spec();
  std::size_t words = 0, good = 0;
  each_word(alphabet(sg), 1, 2, [&](const LassoWord& w) {
    ++words;
    const bool sat = oracle::holds(spec, w);
    good += sat;
    EXPECT_EQ(word_wins(sg, w), sat) << format_word(w);
  });
  EXPECT_EQ(words, 9u * (8 + 64));
  EXPECT_GT(good, 0u);
  EXPECT_LT(good, words);
}

TEST(Pipeline, LtlEvaluatorSpotChecks) {
  using namespace oracle;
  const auto spec = rcg_spec();
  EXPECT_TRUE(holds(spec, parse_word("|{}")));
  EXPECT_FALSE(holds(spec, parse_word("|{req}")));
  EXPECT_TRUE(holds(spec, parse_word("|{req},{grant}")));
  EXPECT_FALSE(holds(spec, parse_word("|{grant}")));
  EXPECT_FALSE(holds(spec, parse_word("{cancel}|{grant},{}")));
  EXPECT_TRUE(holds(spec, parse_word("{req}|{grant},{}")));
  EXPECT_FALSE(holds(spec, parse_word("{req}|{cancel}")));
  EXPECT_TRUE(holds(F(ap("a")), parse_word("{},{}|{a},{}")));
  EXPECT_FALSE(holds(G(ap("a")), parse_word("{a}|{a},{}")));
  EXPECT_TRUE(holds(X(ap("a")), parse_word("{}|{a}")));
  EXPECT_TRUE(holds(U(ap("a"), ap("b")), parse_word("{a},{a}|{b}")));
  EXPECT_FALSE(holds(U(ap("a"), ap("b")), parse_word("{a}|{}")));
  EXPECT_TRUE(holds(G(F(ap("a"))), parse_word("{}|{},{a}")));
  EXPECT_FALSE(holds(F(G(ap("a"))), parse_word("|{},{a}")));
}

TEST(Pipeline, AcceptedWordsOfTheSystemWin) {
  // Sufficiency: every word the system strategy produces that the
  // assumption accepts satisfies the objective.
  for (const char* name : {"F_RCG", "F_SAFETY_SYN"}) {
    SCOPED_TRACE(name);
    const GameFile f = oracle::load(name);
    const SynthesisGame& sg = *f.synthesis;
    const PipelineResult r = combined_assumption(sg);
    ASSERT_EQ(r.status, PipelineStatus::Ok);
    const MooreTransducer sys = strategy_to_moore(sg, r.system);
    std::mt19937_64 rng(7);
    const auto inputs = all_letters(sg.inputs());
    int accepted = 0;
    for (int i = 0; i < 2000; ++i) {
      const LassoWord u = run_moore(sys, random_input_word(inputs, rng));
      if (!lasso_member(r.automaton, u)) continue;
      ++accepted;
      EXPECT_TRUE(word_wins(sg, u)) << format_word(u);
      if (std::string(name) == "F_RCG")
        EXPECT_TRUE(oracle::holds(oracle::rcg_spec(), u)) << format_word(u);
    }
    EXPECT_GT(accepted, 100);
  }
}

TEST(Pipeline, SafetySynRejectsEscape) {
  const GameFile f = oracle::load("F_SAFETY_SYN");
  const PipelineResult r = combined_assumption(*f.synthesis);
  ASSERT_EQ(r.status, PipelineStatus::Ok);
  EXPECT_EQ(ids(f.graph, r.safety.edges), (std::vector<IdEdge>{{"b", "c"}}));
  EXPECT_FALSE(lasso_member(r.automaton, parse_word("|{x}")));
  EXPECT_TRUE(lasso_member(r.automaton, parse_word("|{}")));
}

TEST(Pipeline, RealizableNeedsNothing) {
  const GameFile f = oracle::load("F_SAFETY_SYN");
  const SynthesisGame sg(f.graph, f.synthesis->inputs(), f.synthesis->outputs(),
                         Objective::safe(StateSet::full(f.graph.size())));
  const PipelineResult r = combined_assumption(sg);
  ASSERT_EQ(r.status, PipelineStatus::Ok);
  EXPECT_TRUE(r.safety.edges.empty());
  EXPECT_TRUE(r.fairness.edges.empty());
}

TEST(Pipeline, Diagnostics) {
  const PipelineResult unsat = combined_assumption(*oracle::load("F_UNSAT").synthesis);
  EXPECT_EQ(unsat.status, PipelineStatus::Unsat);
  EXPECT_FALSE(unsat.diagnostic.empty());
  const PipelineResult nofair = combined_assumption(*oracle::load("F_NOFAIR").synthesis);
  EXPECT_EQ(nofair.status, PipelineStatus::NoFairAssumption);
  EXPECT_FALSE(nofair.diagnostic.empty());
}

TEST(Pipeline, ForbiddingEverythingIsEmpty) {
  const GameFile f = oracle::load("F_SAFETY_SYN");
  const GameGraph& g = f.graph;
  const AssumptionAutomaton a(*f.synthesis, {edge(g, "b", "a"), edge(g, "b", "c")}, {});
  EXPECT_TRUE(is_empty(a));
  EXPECT_FALSE(accepted_word(a));
  EXPECT_THROW(env_witness(a), PreconditionError);
  EXPECT_THROW(AssumptionAutomaton(*f.synthesis, {edge(g, "a", "b")}, {}), ValidationError);
  EXPECT_THROW(AssumptionAutomaton(*f.synthesis, {edge(g, "b", "a")}, {edge(g, "b", "a")}),
               ValidationError);
}

TEST(Pipeline, EmptinessAgainstBoundedSearch) {
  const GameFile f = oracle::load("F_RCG");
  const SynthesisGame& sg = *f.synthesis;
  const EdgeSet p2 = f.graph.player2_edges();
  const std::vector<Edge> e2(p2.begin(), p2.end());
  const auto letters = alphabet(sg);
  std::mt19937_64 rng(11);
  int empty = 0, nonempty = 0;
  for (int trial = 0; trial < 40; ++trial) {
    EdgeSet forbidden, fair;
    for (auto e : e2) {
      const auto roll = rng() % 6;
      if (roll == 0) forbidden.insert(e);
      if (roll == 1) fair.insert(e);
    }
    const AssumptionAutomaton a(sg, forbidden, fair);
    const auto w = accepted_word(a);
    if (w) {
      ++nonempty;
      EXPECT_TRUE(lasso_member(a, *w)) << format_word(*w);
      continue;
    }
    ++empty;
    each_word(letters, 1, 2, [&](const LassoWord& u) {
      EXPECT_FALSE(lasso_member(a, u)) << format_word(u);
    });
  }
  // A final trial where every move out of the initial region is forbidden.
  EdgeSet all(e2.begin(), e2.end());
  EXPECT_TRUE(is_empty(AssumptionAutomaton(sg, all, {})));
  EXPECT_GT(nonempty, 0);
}

TEST(Pipeline, EnvWitnessRealizesAssumption) {
  // The environment witness keeps every system inside the assumption, and
  // against the synthesized system the closed loop also wins.
  const GameFile f = oracle::load("F_RCG");
  const SynthesisGame& sg = *f.synthesis;
  const PipelineResult r = combined_assumption(sg);
  const MealyTransducer env = env_witness(r.automaton);
  EXPECT_TRUE(env.total());
  const LassoWord mine = compose(strategy_to_moore(sg, r.system), env);
  EXPECT_TRUE(lasso_member(r.automaton, mine));
  EXPECT_TRUE(word_wins(sg, mine));

  int systems = 0;
  oracle::each_strategy(f.graph, Owner::P1, [&](const auto& choice) {
    MemorylessStrategy alpha(Player::P1, f.graph.size());
    for (StateIndex s = 0; s < f.graph.size(); ++s)
      if (choice[s] != kNoState) alpha.set(s, choice[s]);
    const LassoWord w = compose(strategy_to_moore(sg, alpha), env);
    EXPECT_TRUE(lasso_member(r.automaton, w)) << format_word(w);
    ++systems;
    return false;
  });
  EXPECT_EQ(systems, 1 << 12);
}

TEST(Pipeline, EnvWitnessOnRandomAssumptions) {
  const GameFile f = oracle::load("F_RCG");
  const SynthesisGame& sg = *f.synthesis;
  const EdgeSet p2 = f.graph.player2_edges();
  const std::vector<Edge> e2(p2.begin(), p2.end());
  std::mt19937_64 rng(5);
  int built = 0;
  for (int trial = 0; trial < 200; ++trial) {
    EdgeSet forbidden, fair;
    for (auto e : e2) {
      const auto roll = rng() % 8;
      if (roll == 0) forbidden.insert(e);
      if (roll == 1) fair.insert(e);
    }
    const AssumptionAutomaton a(sg, forbidden, fair);
    MealyTransducer env;
    try {
      env = env_witness(a);
    } catch (const PreconditionError&) {
      continue;
    }
    ++built;
    std::mt19937_64 pick(trial);
    for (int i = 0; i < 20; ++i) {
      MemorylessStrategy alpha(Player::P1, f.graph.size());
      for (StateIndex s = 0; s < f.graph.size(); ++s)
        if (f.graph.owner(s) == Owner::P1) {
          const auto& succ = f.graph.successors(s);
          alpha.set(s, succ[pick() % succ.size()]);
        }
      EXPECT_TRUE(lasso_member(a, compose(strategy_to_moore(sg, alpha), env)))
          << "trial " << trial;
    }
  }
  EXPECT_GT(built, 20);
}
