#pragma once

#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/scc.hpp"
#include "assumekit/solvers.hpp"
#include "assumekit/strategy.hpp"

namespace assumekit {

/// Role of a vertex in the gadget replacing a probabilistic state v.
///   entry     v itself, player 1, priority p(v): picks an even claim 2k
///   choice    player 2, priority p(v): concedes or challenges the claim
///   accept    player 2, priority 2k: player 2 picks the successor
///   challenge player 1, priority 2k+1: player 1 picks the successor
enum class GadgetRole { Original, Entry, Choice, Accept, Challenge };

inline const char* to_string(GadgetRole r) {
  switch (r) {
    case GadgetRole::Original: return "original";
    case GadgetRole::Entry: return "entry";
    case GadgetRole::Choice: return "choice";
    case GadgetRole::Accept: return "accept";
    case GadgetRole::Challenge: return "challenge";
  }
  return "?";
}

struct GadgetOrigin {
  std::string state;
  GadgetRole role = GadgetRole::Original;
  int claim = -1;  // the even priority 2k, -1 for original and entry

  bool operator==(const GadgetOrigin&) const = default;
};

struct GadgetOutput {
  GameGraph game;
  PriorityMap priority;
  std::map<std::string, GadgetOrigin> back;
};

struct AlmostSureResult {
  StateSet win;
  MemorylessStrategy strategy;  // player 1, on the player-1 states of win
};

namespace detail {

/// Index-level gadget. States 0..n-1 keep their index (probabilistic ones
/// become entries); gadget vertices are appended in order of the
/// probabilistic state, then claim, then choice/accept/challenge.
struct GadgetArena {
  Arena arena;
  PriorityMap priority;
  std::vector<StateIndex> origin;
  std::vector<GadgetRole> role;
  std::vector<int> claim;
};

inline GadgetArena gadget_arena(const Arena& a, const PriorityMap& p) {
  const std::size_t n = a.size();
  const int d = num_priorities(p);
  GadgetArena out;
  std::vector<Owner> owner = a.owner;
  std::vector<std::vector<StateIndex>> succ = a.succ;
  out.priority = p;
  out.origin.resize(n);
  out.role.assign(n, GadgetRole::Original);
  out.claim.assign(n, -1);
  for (StateIndex s = 0; s < n; ++s) out.origin[s] = s;

  auto add = [&](Owner o, int prio, StateIndex from, GadgetRole r, int k,
                 std::vector<StateIndex> next) {
    const auto id = static_cast<StateIndex>(owner.size());
    owner.push_back(o);
    succ.push_back(std::move(next));
    out.priority.push_back(prio);
    out.origin.push_back(from);
    out.role.push_back(r);
    out.claim.push_back(k);
    return id;
  };

  for (StateIndex v = 0; v < n; ++v) {
    if (a.owner[v] != Owner::Prob) continue;
    const std::vector<StateIndex> support = a.succ[v];
    owner[v] = Owner::P1;
    out.role[v] = GadgetRole::Entry;
    std::vector<StateIndex> claims;
    for (int k = 0; k < d; k += 2) {
      const StateIndex choice =
          add(Owner::P2, p[v], v, GadgetRole::Choice, k, {});
      const StateIndex accept =
          add(Owner::P2, k, v, GadgetRole::Accept, k, support);
      const StateIndex challenge =
          add(Owner::P1, k + 1, v, GadgetRole::Challenge, k, support);
      succ[choice] = {accept, challenge};
      claims.push_back(choice);
    }
    succ[v] = std::move(claims);
  }
  out.arena = Arena::build(std::move(owner), std::move(succ));
  return out;
}

/// Almost-sure parity winning set on the first `n` states, and player 1's
/// projected choices (kNoState where undefined).
inline std::pair<StateSet, std::vector<StateIndex>> almost_sure_parity(
    const Arena& a, const PriorityMap& p) {
  const std::size_t n = a.size();
  const GadgetArena gad = gadget_arena(a, p);
  const RawSolution raw = solve_parity(gad.arena, gad.priority);
  StateSet win(n);
  std::vector<StateIndex> choice(n, kNoState);
  for (StateIndex s = 0; s < n; ++s) {
    if (!raw.win[0].contains(s)) continue;
    win.insert(s);
    if (a.owner[s] == Owner::P1) choice[s] = raw.choice[s];
  }
  return {std::move(win), std::move(choice)};
}

inline void check_priorities(const GameGraph& g, const PriorityMap& p) {
  if (p.size() != g.size())
    throw ValidationError("priority map does not cover every state",
                          "priorities");
  for (StateIndex s = 0; s < g.size(); ++s)
    if (p[s] < 0)
      throw ValidationError("negative priority for '" + g.id(s) + "'",
                            "priorities");
}

/// Calls `visit(choice)` for every memoryless strategy of `player`, where
/// choice[s] is the successor picked at every state the player owns.
template <typename Visit>
void for_each_memoryless(const Arena& a, Player player, Visit&& visit) {
  std::vector<StateIndex> owned;
  for (StateIndex s = 0; s < a.size(); ++s)
    if (owned_by(a.owner[s], player)) owned.push_back(s);
  std::vector<std::size_t> pos(owned.size(), 0);
  std::vector<StateIndex> choice(a.size(), kNoState);
  while (true) {
    for (std::size_t i = 0; i < owned.size(); ++i)
      choice[owned[i]] = a.succ[owned[i]][pos[i]];
    visit(choice);
    std::size_t i = 0;
    while (i < owned.size() && ++pos[i] == a.succ[owned[i]].size()) pos[i++] = 0;
    if (i == owned.size()) return;
  }
}

inline double count_memoryless(const Arena& a, Player player) {
  double total = 1;
  for (StateIndex s = 0; s < a.size(); ++s)
    if (owned_by(a.owner[s], player)) total *= static_cast<double>(a.succ[s].size());
  return total;
}

/// Arena with every player-owned state cut down to its chosen edge.
inline Arena restrict_to(const Arena& a, const std::vector<StateIndex>& first,
                         const std::vector<StateIndex>* second = nullptr) {
  std::vector<std::vector<StateIndex>> succ = a.succ;
  for (StateIndex s = 0; s < a.size(); ++s) {
    if (first[s] != kNoState && a.owner[s] != Owner::Prob) succ[s] = {first[s]};
    if (second && (*second)[s] != kNoState && a.owner[s] != Owner::Prob)
      succ[s] = {(*second)[s]};
  }
  return Arena::build(a.owner, std::move(succ));
}

/// States of a Markov chain (every non-random state has one successor) from
/// which some bottom SCC with odd minimal priority is reachable.
inline StateSet reaches_odd_bottom(const Arena& chain, const PriorityMap& p) {
  const std::size_t n = chain.size();
  const auto scc = strongly_connected_components(chain, StateSet::full(n));
  StateSet bad(n);
  for (std::size_t c = 0; c < scc.count(); ++c) {
    const auto& comp = scc.members[c];
    bool bottom = true;
    int least = std::numeric_limits<int>::max();
    for (auto s : comp) {
      least = std::min(least, p[s]);
      for (auto t : chain.succ[s])
        if (scc.component[t] != static_cast<int>(c)) bottom = false;
    }
    if (bottom && !even(least))
      for (auto s : comp) bad.insert(s);
  }
  return backward_reach(chain, StateSet::full(n), bad);
}

}  // namespace detail

/// Deterministic game whose sure-winning region, restricted to the original
/// states, is the almost-sure winning region of (g, p).
inline GadgetOutput gadget_reduce(const GameGraph& g, const PriorityMap& p) {
  detail::check_priorities(g, p);
  const auto gad = detail::gadget_arena(g.arena(), p);
  std::set<std::string> taken;
  for (const auto& r : g.records()) taken.insert(r.id);

  GadgetOutput out;
  std::vector<std::string> id(gad.arena.size());
  for (StateIndex s = 0; s < gad.arena.size(); ++s) {
    const std::string& base = g.id(gad.origin[s]);
    if (s < g.size()) {
      id[s] = base;
    } else {
      const int k = gad.claim[s];
      std::string name = base + "." + to_string(gad.role[s]) +
                         std::to_string(gad.role[s] == GadgetRole::Challenge
                                            ? k + 1
                                            : k);
      while (taken.count(name)) name += "'";
      taken.insert(name);
      id[s] = name;
    }
    out.back[id[s]] = {base, gad.role[s], gad.claim[s]};
  }
  std::vector<StateRecord> records;
  std::vector<IdEdge> edges;
  for (StateIndex s = 0; s < gad.arena.size(); ++s) {
    StateRecord r;
    if (s < g.size()) r = g.record(s);
    r.id = id[s];
    r.owner = gad.arena.owner[s];
    r.priority = gad.priority[s];
    if (s >= g.size()) r.label.reset();
    records.push_back(std::move(r));
    for (auto t : gad.arena.succ[s]) edges.emplace_back(id[s], id[t]);
  }
  out.game = GameGraph(std::move(records), edges, {},
                       g.initial() ? std::optional(g.id(*g.initial()))
                                   : std::nullopt);
  // Reindex the priority map: the new graph sorts states by id.
  out.priority.assign(out.game.size(), 0);
  for (StateIndex s = 0; s < gad.arena.size(); ++s)
    out.priority[out.game.at(id[s])] = gad.priority[s];
  return out;
}

/// Win_1^as(Parity(p)) = Win_1^sure(gadget) restricted to S, with a
/// memoryless almost-sure winning strategy for player 1.
inline AlmostSureResult almost_sure_parity(const GameGraph& g,
                                           const PriorityMap& p) {
  detail::check_priorities(g, p);
  auto [win, choice] = detail::almost_sure_parity(g.arena(), p);
  MemorylessStrategy alpha(Player::P1, g.size());
  for (StateIndex s = 0; s < g.size(); ++s)
    if (choice[s] != kNoState) alpha.set(s, choice[s]);
  return {std::move(win), std::move(alpha)};
}

/// Brute force: s wins iff some memoryless player-1 strategy makes every
/// bottom SCC reachable from s have even minimal priority against every
/// memoryless player-2 strategy.
inline StateSet oracle_almost_sure(const GameGraph& g, const PriorityMap& p,
                                   double max_strategy_pairs = 2e6) {
  detail::check_priorities(g, p);
  const Arena& a = g.arena();
  const double pairs = detail::count_memoryless(a, Player::P1) *
                       detail::count_memoryless(a, Player::P2);
  if (pairs > max_strategy_pairs)
    throw GuardError("oracle_almost_sure: " + std::to_string(pairs) +
                     " strategy pairs exceed the guard");
  const std::size_t n = g.size();
  StateSet win(n);
  detail::for_each_memoryless(a, Player::P1, [&](const auto& alpha) {
    const Arena half = detail::restrict_to(a, alpha);
    StateSet good = StateSet::full(n);
    detail::for_each_memoryless(half, Player::P2, [&](const auto& beta) {
      if (good.empty()) return;
      good -= detail::reaches_odd_bottom(detail::restrict_to(half, beta), p);
    });
    win |= good;
  });
  return win;
}

}  // namespace assumekit
