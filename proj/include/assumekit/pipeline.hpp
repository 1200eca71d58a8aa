#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assumekit/fair.hpp"
#include "assumekit/graph.hpp"
#include "assumekit/safety.hpp"
#include "assumekit/scc.hpp"
#include "assumekit/solvers.hpp"
#include "assumekit/strategy.hpp"
#include "assumekit/synthesis.hpp"
#include "assumekit/transducer.hpp"

namespace assumekit {

/// psi_{E_s} n psi_{E_l} over the alphabet of a synthesis game. A word is
/// accepted iff its unique play never takes a forbidden edge and, for every
/// fair edge (s,t), either s occurs finitely often or (s,t) is taken
/// infinitely often. Words leaving through a forbidden edge end in an
/// implicit rejecting sink.
class AssumptionAutomaton {
 public:
  AssumptionAutomaton() = default;
  AssumptionAutomaton(SynthesisGame base, EdgeSet forbidden, EdgeSet fair)
      : base_(std::move(base)),
        forbidden_(std::move(forbidden)),
        fair_(std::move(fair)) {
    const GameGraph& g = base_.graph();
    auto check = [&](const EdgeSet& es, const char* field) {
      for (auto e : es) {
        if (e.src >= g.size() || e.dst >= g.size() || !g.has_edge(e.src, e.dst))
          throw ValidationError("edge is not in the game", field);
        if (g.owner(e.src) != Owner::P2)
          throw ValidationError("edge (" + g.id(e.src) + "," + g.id(e.dst) +
                                    ") does not leave a player-2 state",
                                field);
      }
    };
    check(forbidden_, "forbidden");
    check(fair_, "fair");
    for (auto e : fair_)
      if (forbidden_.count(e))
        throw ValidationError("edge (" + g.id(e.src) + "," + g.id(e.dst) +
                                  ") is both forbidden and fair",
                              "fair");
  }

  const SynthesisGame& base() const { return base_; }
  const EdgeSet& forbidden() const { return forbidden_; }
  const EdgeSet& fair() const { return fair_; }

  bool operator==(const AssumptionAutomaton&) const = default;

 private:
  SynthesisGame base_;
  EdgeSet forbidden_;
  EdgeSet fair_;
};

enum class PipelineStatus { Ok, Unsat, NoFairAssumption };

struct PipelineResult {
  PipelineStatus status = PipelineStatus::Ok;
  std::string diagnostic;
  SafetyAssumption safety;
  FairAssumption fairness;
  AssumptionAutomaton automaton;
  SafeTransform transformed;
  /// Total player-1 strategy on the original game; winning for
  /// AssumeFair(E_l) on the transformed game from the initial state.
  MemorylessStrategy system;
};

namespace detail {

/// Play acceptance for a lasso play starting at the initial state.
inline bool play_accepted(const AssumptionAutomaton& a, const LassoPlay& play) {
  for (std::size_t i = 0; i < play.length(); ++i)
    if (a.forbidden().count({play.at(i), play.at(i + 1)})) return false;
  std::set<StateIndex> recurring(play.cycle.begin(), play.cycle.end());
  EdgeSet cycle_edges;
  for (std::size_t i = 0; i < play.cycle.size(); ++i)
    cycle_edges.insert(
        {play.cycle[i], play.cycle[(i + 1) % play.cycle.size()]});
  for (auto e : a.fair())
    if (recurring.count(e.src) && !cycle_edges.count(e)) return false;
  return true;
}

/// Shortest path inside `mask` from u to any state satisfying `goal`,
/// excluding u itself unless `allow_empty`. Returns the states after u.
template <typename Succ, typename Goal>
std::optional<std::vector<StateIndex>> shortest_path(std::size_t n,
                                                     const StateSet& mask,
                                                     StateIndex u, Succ&& succ,
                                                     Goal&& goal,
                                                     bool allow_empty) {
  if (allow_empty && goal(u)) return std::vector<StateIndex>{};
  std::vector<StateIndex> parent(n, kNoState);
  std::vector<bool> seen(n, false);
  std::deque<StateIndex> todo{u};
  seen[u] = true;
  while (!todo.empty()) {
    const StateIndex x = todo.front();
    todo.pop_front();
    for (auto y : succ(x)) {
      if (!mask.contains(y)) continue;
      if (goal(y)) {
        std::vector<StateIndex> path{y};
        for (StateIndex z = x; z != u; z = parent[z]) path.push_back(z);
        return std::vector<StateIndex>(path.rbegin(), path.rend());
      }
      if (seen[y]) continue;
      seen[y] = true;
      parent[y] = x;
      todo.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Membership of an ultimately periodic word.
inline bool lasso_member(const AssumptionAutomaton& a, const LassoWord& w) {
  return detail::play_accepted(a, play_of_word(a.base(), w));
}

/// A lasso play from the initial state accepted by `a`, if any: a fair
/// strongly connected set reachable without forbidden edges, toured so that
/// every fair edge leaving a state of the tour is taken.
inline std::optional<LassoPlay> accepted_play(const AssumptionAutomaton& a) {
  const GameGraph& g = a.base().graph();
  const std::size_t n = g.size();
  std::vector<std::vector<StateIndex>> succ(n);
  for (StateIndex u = 0; u < n; ++u)
    for (auto v : g.successors(u))
      if (!a.forbidden().count({u, v})) succ[u].push_back(v);
  const Arena pruned = Arena::build(std::vector<Owner>(n, Owner::P1), succ);
  auto next = [&](StateIndex u) -> const std::vector<StateIndex>& {
    return pruned.succ[u];
  };
  const StateIndex init = a.base().initial();
  const StateSet reach = forward_reach(n, StateSet::full(n), init, next);
  const auto fair = detail::fair_targets(n, a.fair());
  const StateSet good = detail::odd_fair_cycle_states(
      pruned, PriorityMap(n, 1), fair, reach);
  if (good.empty()) return std::nullopt;

  // The good set is a union of fair components; tour the one holding the
  // least state.
  const auto scc = strongly_connected_components(pruned, good);
  const StateIndex start = good.members().front();
  StateSet comp(n);
  for (auto s : scc.members[scc.component[start]]) comp.insert(s);

  LassoPlay play;
  auto stem = detail::shortest_path(
      n, reach, init, next, [&](StateIndex s) { return s == start; }, true);
  play.stem.push_back(init);
  for (auto s : *stem) play.stem.push_back(s);
  play.stem.pop_back();  // `start` opens the cycle

  std::vector<StateIndex> tour{start};
  StateIndex at = start;
  auto walk_to = [&](StateIndex target, bool allow_empty) {
    auto path = detail::shortest_path(
        n, comp, at, next, [&](StateIndex s) { return s == target; },
        allow_empty);
    for (auto s : *path) tour.push_back(s);
    at = target;
  };
  bool moved = false;
  for (auto e : a.fair()) {
    if (!comp.contains(e.src)) continue;
    walk_to(e.src, true);
    tour.push_back(e.dst);
    at = e.dst;
    moved = true;
  }
  if (!moved) {
    walk_to(start, false);
  } else {
    walk_to(start, true);
  }
  tour.pop_back();  // closing state equals `start`
  play.cycle = std::move(tour);
  return play;
}

/// No word is accepted.
inline bool is_empty(const AssumptionAutomaton& a) { return !accepted_play(a); }

/// An accepted word, if any.
inline std::optional<LassoWord> accepted_word(const AssumptionAutomaton& a) {
  auto play = accepted_play(a);
  if (!play) return std::nullopt;
  return word_of_play(a.base(), *play);
}

/// Environment transducer (reads outputs, writes inputs) realizing the
/// assumption: at a fair source it cycles through the fair targets, elsewhere
/// it takes the lexicographically first successor that keeps every
/// forbidden edge avoidable. Memory is one round-robin counter per fair
/// source.
inline MealyTransducer env_witness(const AssumptionAutomaton& a) {
  const SynthesisGame& sg = a.base();
  const GameGraph& g = sg.graph();
  const std::size_t n = g.size();
  const StateSet safe = detail::avoid_region(g.arena(), a.forbidden());
  if (!safe.contains(sg.initial()))
    throw PreconditionError(
        "environment cannot avoid the forbidden edges from the initial state");
  const auto fair = detail::fair_targets(n, a.fair());
  for (auto e : a.fair())
    if (safe.contains(e.src) && !safe.contains(e.dst))
      throw PreconditionError("fair edge (" + g.id(e.src) + "," + g.id(e.dst) +
                              ") leads where forbidden edges are forced");

  std::vector<StateIndex> sources;
  for (StateIndex s = 0; s < n; ++s)
    if (!fair[s].empty()) sources.push_back(s);
  using Key = std::pair<StateIndex, std::vector<std::size_t>>;
  std::map<Key, std::size_t> index;
  std::vector<Key> keys;
  auto intern = [&](const Key& k) {
    auto [it, fresh] = index.emplace(k, keys.size());
    if (fresh) keys.push_back(k);
    return it->second;
  };

  MealyTransducer env;
  env.input_props = sg.outputs();
  env.output_props = sg.inputs();
  env.initial = intern({sg.initial(), std::vector<std::size_t>(sources.size(), 0)});
  const auto letters = all_letters(sg.outputs());
  for (std::size_t q = 0; q < keys.size(); ++q) {
    std::map<Letter, MealyTransducer::Move> row;
    for (const auto& out : letters) {
      auto [state, counters] = keys[q];
      const StateIndex t = *sg.successor(state, out);
      StateIndex next = kNoState;
      const auto slot = std::lower_bound(sources.begin(), sources.end(), t);
      if (slot != sources.end() && *slot == t) {
        auto& c = counters[slot - sources.begin()];
        next = fair[t][c];
        c = (c + 1) % fair[t].size();
      } else {
        for (auto u : g.successors(t))
          if (!a.forbidden().count({t, u}) && safe.contains(u)) {
            next = u;
            break;
          }
      }
      if (next == kNoState)
        throw PreconditionError("no safe environment move at '" + g.id(t) + "'");
      row[out] = {intern({next, std::move(counters)}), sg.label(next)};
    }
    env.transition.push_back(std::move(row));
  }
  for (const auto& [state, counters] : keys) {
    std::string name = g.id(state);
    if (!counters.empty()) {
      name += "[";
      for (std::size_t i = 0; i < counters.size(); ++i)
        name += (i ? "," : "") + std::to_string(counters[i]);
      name += "]";
    }
    env.states.push_back(std::move(name));
  }
  return env;
}

/// Safety assumption, then a locally-minimal fair assumption on the game
/// where forbidden edges are free wins. Throws InvariantError if the
/// transformed game is not live or the final strategy fails re-verification.
inline PipelineResult combined_assumption(const SynthesisGame& sg) {
  const GameGraph& g = sg.graph();
  const PriorityMap p = parity_of(g, sg.objective());
  PipelineResult out;
  out.safety = compute_safety_assumption(g, p);
  const StateIndex init = sg.initial();
  if (!out.safety.safe_region.contains(init)) {
    out.status = PipelineStatus::Unsat;
    out.diagnostic =
        "specification is unsatisfiable from the initial state: no play wins";
    return out;
  }
  out.transformed = assume_safe_transform(g, p, out.safety.edges);
  const SafeTransform& t = out.transformed;
  const StateIndex tinit = t.image[init];
  if (!is_live(t.game, t.priority, tinit))
    throw InvariantError(
        "initial state is not live after applying the safety assumption");

  EdgeSet candidates;
  for (auto e : t.game.player2_edges())
    if (e.dst != t.sink) candidates.insert(e);
  const FairSearch search =
      locally_minimal_fair(t.game, t.priority, tinit, candidates);
  if (!search.assumption) {
    out.status = PipelineStatus::NoFairAssumption;
    out.diagnostic = to_string(search.diagnostic);
    return out;
  }
  EdgeSet fair_t = search.assumption->edges;
  EdgeSet fair;
  for (auto e : fair_t) fair.insert(edge(g, t.game.id(e.src), t.game.id(e.dst)));

  const FairWin win = assume_fair_win(t.game, t.priority, fair_t);
  const MemorylessStrategy alpha_t = win.strategy.completed(t.game);
  if (!win.win.contains(tinit) ||
      !verify_fair_strategy(t.game, t.priority, fair_t, alpha_t, tinit))
    throw InvariantError("fair assumption failed re-verification");

  out.fairness.edges = fair;
  out.fairness.winning_from = StateSet(g.size());
  for (StateIndex s = 0; s < g.size(); ++s)
    if (win.win.contains(t.image[s])) out.fairness.winning_from.insert(s);
  out.system = MemorylessStrategy(Player::P1, g.size());
  for (StateIndex s = 0; s < g.size(); ++s)
    if (g.owner(s) == Owner::P1)
      out.system.set(s, g.at(t.game.id(alpha_t[t.image[s]])));
  out.automaton = AssumptionAutomaton(sg, out.safety.edges, fair);
  return out;
}

}  // namespace assumekit
