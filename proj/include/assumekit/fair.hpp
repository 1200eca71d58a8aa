#pragma once

#include <algorithm>
#include <iterator>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/scc.hpp"
#include "assumekit/solvers.hpp"
#include "assumekit/stochastic.hpp"
#include "assumekit/strategy.hpp"

namespace assumekit {

/// Strongly-fair assumption: whenever the source of an edge is visited
/// infinitely often, the edge is taken infinitely often.
struct FairAssumption {
  EdgeSet edges;
  StateSet winning_from;
};

/// Result of AssumeFair solving: the sure-winning region and a memoryless
/// player-1 strategy winning from all of it.
struct FairWin {
  StateSet win;
  MemorylessStrategy strategy;
};

enum class FairDiagnostic { Found, NotLive, NoSufficientSubset };

inline const char* to_string(FairDiagnostic d) {
  switch (d) {
    case FairDiagnostic::Found: return "found";
    case FairDiagnostic::NotLive:
      return "state is not live; a safety assumption is needed first";
    case FairDiagnostic::NoSufficientSubset:
      return "state is live but no set of fair edges suffices";
  }
  return "?";
}

struct FairSearch {
  std::optional<FairAssumption> assumption;
  FairDiagnostic diagnostic = FairDiagnostic::Found;
};

/// How AssRed wires a fair source s that also has non-fair edges.
///   Corrected  random over (E_l n E(s)) u {s~}; s~ keeps all of E(s)
///   Intuition  random over (E_l n E(s)) u {s~}; s~ gets E(s) \ E_l
///   Formal     random over E(s) u {s~}; s~ gets E(s) \ E_l
/// Only Corrected agrees with AssumeFair: under the other two, player 2
/// can no longer stay on fair edges forever.
enum class AssRedVariant { Corrected, Intuition, Formal };

namespace detail {

/// Fair targets per state, ascending.
using FairTargets = std::vector<std::vector<StateIndex>>;

inline FairTargets fair_targets(std::size_t n, const EdgeSet& es) {
  FairTargets out(n);
  for (auto e : es) out[e.src].push_back(e.dst);  // EdgeSet is sorted
  return out;
}

struct ReducedArena {
  Arena arena;
  PriorityMap priority;
  std::vector<StateIndex> copy_of;  // for appended copies, their source
};

/// AssRed on indices. A source s becomes random over its fair targets plus
/// a fresh player-2 copy (see AssRedVariant); when every edge of s is fair,
/// s is random over E(s) and gets no copy.
inline ReducedArena ass_red(const Arena& a, const PriorityMap& p,
                            const FairTargets& fair,
                            AssRedVariant variant = AssRedVariant::Corrected) {
  const std::size_t n = a.size();
  ReducedArena out;
  std::vector<Owner> owner = a.owner;
  std::vector<std::vector<StateIndex>> succ = a.succ;
  out.priority = p;
  for (StateIndex s = 0; s < n; ++s) {
    if (fair[s].empty()) continue;
    owner[s] = Owner::Prob;
    if (fair[s].size() == a.succ[s].size()) continue;
    std::vector<StateIndex> rest;
    if (variant == AssRedVariant::Corrected)
      rest = a.succ[s];
    else
      std::set_difference(a.succ[s].begin(), a.succ[s].end(), fair[s].begin(),
                          fair[s].end(), std::back_inserter(rest));
    const auto copy = static_cast<StateIndex>(owner.size());
    owner.push_back(Owner::P2);
    succ.push_back(std::move(rest));
    out.priority.push_back(p[s]);
    out.copy_of.push_back(s);
    succ[s] = variant == AssRedVariant::Formal ? a.succ[s] : fair[s];
    succ[s].push_back(copy);
  }
  out.arena = Arena::build(std::move(owner), std::move(succ));
  return out;
}

/// Win_1^sure(AssumeFair) on the first n states plus player-1 choices.
inline std::pair<StateSet, std::vector<StateIndex>> assume_fair_win(
    const Arena& a, const PriorityMap& p, const FairTargets& fair,
    AssRedVariant variant = AssRedVariant::Corrected) {
  const ReducedArena red = ass_red(a, p, fair, variant);
  auto [win, choice] = almost_sure_parity(red.arena, red.priority);
  StateSet out(a.size());
  for (auto s : win.members())
    if (s < a.size()) out.insert(s);
  choice.resize(a.size());
  return {std::move(out), std::move(choice)};
}

inline bool wins_from(const Arena& a, const PriorityMap& p,
                      const FairTargets& fair, StateIndex s) {
  return assume_fair_win(a, p, fair).first.contains(s);
}

/// States of `mask` lying on a fair cycle with odd minimal priority: a
/// strongly connected set C in which every fair edge leaving a C-state stays
/// inside C. Iteratively refines SCCs by dropping states whose fair edges
/// leave their component.
inline StateSet odd_fair_cycle_states(const Arena& a, const PriorityMap& p,
                                      const FairTargets& fair,
                                      const StateSet& mask) {
  const std::size_t n = a.size();
  StateSet found(n);
  std::vector<int> odds;
  for (auto s : mask.members())
    if (!even(p[s])) odds.push_back(p[s]);
  std::sort(odds.begin(), odds.end());
  odds.erase(std::unique(odds.begin(), odds.end()), odds.end());
  for (int q : odds) {
    StateSet live(n);
    for (auto s : mask.members())
      if (p[s] >= q) live.insert(s);
    bool changed = true;
    while (changed) {
      changed = false;
      const auto scc = strongly_connected_components(a, live);
      for (auto s : live.members()) {
        const int c = scc.component[s];
        bool drop = !scc.nontrivial[c];
        for (auto t : fair[s])
          if (scc.component[t] != c) drop = true;
        if (drop) {
          live.erase(s);
          changed = true;
        }
      }
      if (!changed)
        for (std::size_t c = 0; c < scc.count(); ++c) {
          const auto& comp = scc.members[c];
          if (std::any_of(comp.begin(), comp.end(),
                          [&](StateIndex s) { return p[s] == q; }))
            for (auto s : comp) found.insert(s);
        }
    }
  }
  return found;
}

inline void check_fair_edges(const GameGraph& g, const EdgeSet& es) {
  require_player2_edges(g, es);
}

}  // namespace detail

/// AssRed(G, E_l, p): fair-edge sources become probabilistic with uniform
/// weights; s~ is a player-2 copy with the priority of s, named id + "~".
inline std::pair<GameGraph, PriorityMap> ass_red(
    const GameGraph& g, const EdgeSet& fair, const PriorityMap& p,
    AssRedVariant variant = AssRedVariant::Corrected) {
  detail::check_fair_edges(g, fair);
  detail::check_priorities(g, p);
  const auto red = detail::ass_red(
      g.arena(), p, detail::fair_targets(g.size(), fair), variant);
  std::vector<std::string> id(red.arena.size());
  std::set<std::string> taken;
  for (StateIndex s = 0; s < g.size(); ++s) {
    id[s] = g.id(s);
    taken.insert(id[s]);
  }
  for (std::size_t i = 0; i < red.copy_of.size(); ++i) {
    std::string name = g.id(red.copy_of[i]) + "~";
    while (taken.count(name)) name += "'";
    taken.insert(name);
    id[g.size() + i] = name;
  }
  std::vector<StateRecord> records;
  std::vector<IdEdge> edge_list;
  Distribution dist;
  for (StateIndex s = 0; s < red.arena.size(); ++s) {
    StateRecord r;
    if (s < g.size()) {
      r = g.record(s);
    } else {
      r = g.record(red.copy_of[s - g.size()]);
      r.label.reset();
    }
    r.id = id[s];
    r.owner = red.arena.owner[s];
    r.priority = red.priority[s];
    records.push_back(std::move(r));
    const auto& next = red.arena.succ[s];
    for (auto t : next) {
      edge_list.emplace_back(id[s], id[t]);
      if (red.arena.owner[s] == Owner::Prob)
        dist[id[s]][id[t]] =
            Rational(1, static_cast<std::int64_t>(next.size()));
    }
  }
  GameGraph out(std::move(records), edge_list, dist,
                g.initial() ? std::optional(g.id(*g.initial())) : std::nullopt);
  PriorityMap q(out.size());
  for (StateIndex s = 0; s < red.arena.size(); ++s)
    q[out.at(id[s])] = red.priority[s];
  return {std::move(out), std::move(q)};
}

/// Win_1^sure(AssumeFair(E_l, Parity(p))), computed as the almost-sure
/// winning region of AssRed(G, E_l, p) restricted to S.
inline FairWin assume_fair_win(
    const GameGraph& g, const PriorityMap& p, const EdgeSet& fair,
    AssRedVariant variant = AssRedVariant::Corrected) {
  if (!g.deterministic())
    throw PreconditionError("assume_fair_win needs a deterministic graph");
  detail::check_fair_edges(g, fair);
  detail::check_priorities(g, p);
  auto [win, choice] = detail::assume_fair_win(
      g.arena(), p, detail::fair_targets(g.size(), fair), variant);
  MemorylessStrategy alpha(Player::P1, g.size());
  for (auto s : win.members())
    if (g.owner(s) == Owner::P1) alpha.set(s, choice[s]);
  return {std::move(win), std::move(alpha)};
}

/// Checks that a total player-1 strategy wins AssumeFair(E_l, Parity(p))
/// from s: no fair odd cycle is reachable in the graph it induces.
inline bool verify_fair_strategy(const GameGraph& g, const PriorityMap& p,
                                 const EdgeSet& fair,
                                 const MemorylessStrategy& alpha,
                                 StateIndex s) {
  detail::check_fair_edges(g, fair);
  alpha.validate(g);
  const Arena& a = g.arena();
  std::vector<StateIndex> choice(g.size(), kNoState);
  for (StateIndex u = 0; u < g.size(); ++u)
    if (g.owner(u) == Owner::P1) {
      if (!alpha.defined(u)) continue;
      choice[u] = alpha[u];
    }
  auto succ = [&](StateIndex u) -> std::vector<StateIndex> {
    if (choice[u] != kNoState) return {choice[u]};
    return a.succ[u];
  };
  const StateSet reach = forward_reach(g.size(), StateSet::full(g.size()), s, succ);
  for (auto u : reach.members())
    if (g.owner(u) == Owner::P1 && !alpha.defined(u)) return false;
  const Arena induced = detail::restrict_to(a, choice);
  return detail::odd_fair_cycle_states(induced, p,
                                       detail::fair_targets(g.size(), fair),
                                       reach)
      .empty();
}

/// Brute force over memoryless player-1 strategies and state subsets: s wins
/// iff some strategy leaves no reachable strongly connected set C with odd
/// minimal priority whose fair edges all stay in C.
inline bool oracle_assume_fair(const GameGraph& g, const PriorityMap& p,
                               const EdgeSet& fair, StateIndex s,
                               double max_strategies = 1e6) {
  detail::check_fair_edges(g, fair);
  detail::check_priorities(g, p);
  const Arena& a = g.arena();
  const std::size_t n = g.size();
  if (n > 16) throw GuardError("oracle_assume_fair: more than 16 states");
  if (detail::count_memoryless(a, Player::P1) > max_strategies)
    throw GuardError("oracle_assume_fair: too many player-1 strategies");
  const auto targets = detail::fair_targets(n, fair);
  bool wins = false;
  detail::for_each_memoryless(a, Player::P1, [&](const auto& alpha) {
    if (wins) return;
    const Arena h = detail::restrict_to(a, alpha);
    const StateSet reach = forward_reach(
        n, StateSet::full(n), s,
        [&](StateIndex u) -> const std::vector<StateIndex>& { return h.succ[u]; });
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
      StateSet c(n);
      bool inside = true;
      int least = std::numeric_limits<int>::max();
      for (StateIndex u = 0; u < n; ++u)
        if (bits & (1u << u)) {
          if (!reach.contains(u)) inside = false;
          c.insert(u);
          least = std::min(least, p[u]);
        }
      if (!inside || even(least)) continue;
      bool closed = true;
      for (auto u : c.members())
        for (auto t : targets[u])
          if (!c.contains(t)) closed = false;
      if (!closed) continue;
      const auto scc = strongly_connected_components(h, c);
      if (scc.count() == 1 && scc.nontrivial[0]) return;  // player 2 escapes
    }
    wins = true;
  });
  return wins;
}

/// s is live for player 1: it sure-wins Safe(Win_{1,2}(Parity(p))) from s.
inline bool is_live(const GameGraph& g, const PriorityMap& p, StateIndex s) {
  if (s >= g.size()) throw PreconditionError("unknown state");
  const StateSet coop = cooperative_win(g, p);
  return solve(g, Objective::safe(coop)).win1.contains(s);
}

/// Locally-minimal strongly-fair assumption for s. Starts from all
/// `candidates` (default: every player-2 edge) and drops edges in
/// lexicographic order whenever s still wins without them. One pass is
/// enough: an edge that could not be dropped from a larger set cannot be
/// dropped from a smaller one.
inline FairSearch locally_minimal_fair(
    const GameGraph& g, const PriorityMap& p, StateIndex s,
    const std::optional<EdgeSet>& candidates = std::nullopt) {
  if (!g.deterministic())
    throw PreconditionError("locally_minimal_fair needs a deterministic graph");
  if (s >= g.size()) throw PreconditionError("unknown state");
  detail::check_priorities(g, p);
  EdgeSet current = candidates ? *candidates : g.player2_edges();
  detail::check_fair_edges(g, current);
  const Arena& a = g.arena();
  auto targets = detail::fair_targets(g.size(), current);
  if (!detail::wins_from(a, p, targets, s))
    return {std::nullopt, is_live(g, p, s) ? FairDiagnostic::NoSufficientSubset
                                           : FairDiagnostic::NotLive};
  const std::vector<Edge> order(current.begin(), current.end());
  for (auto e : order) {
    auto& list = targets[e.src];
    const auto pos = std::find(list.begin(), list.end(), e.dst);
    list.erase(pos);
    if (detail::wins_from(a, p, targets, s)) {
      current.erase(e);
    } else {
      list.insert(std::lower_bound(list.begin(), list.end(), e.dst), e.dst);
    }
  }
  FairAssumption out{current, assume_fair_win(g, p, current).win};
  return {std::move(out), FairDiagnostic::Found};
}

}  // namespace assumekit
