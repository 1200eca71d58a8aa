#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/scc.hpp"
#include "assumekit/strategy.hpp"

namespace assumekit {

/// Sure-winning partition with memoryless winning strategies. strat1 is
/// defined exactly on the player-1 states of win1, strat2 on the player-2
/// states of win2.
struct SolveResult {
  StateSet win1;
  StateSet win2;
  MemorylessStrategy strat1;
  MemorylessStrategy strat2;

  const StateSet& win(Player p) const { return p == Player::P1 ? win1 : win2; }
};

namespace detail {

inline int index_of(Player p) { return p == Player::P1 ? 0 : 1; }
inline Player player_of(int i) { return i == 0 ? Player::P1 : Player::P2; }

/// Partition plus one choice per state; the choice of s is meaningful only
/// when s lies in its owner's winning region.
struct RawSolution {
  std::array<StateSet, 2> win;
  std::vector<StateIndex> choice;
};

inline bool owns(const Arena& a, StateIndex s, Player p) {
  return owned_by(a.owner[s], p);
}

inline StateIndex first_successor_in(const Arena& a, StateIndex u,
                                     const StateSet& region) {
  for (auto v : a.succ[u])
    if (region.contains(v)) return v;
  return kNoState;
}

/// Attractor of `target` for `player` inside the subgame `mask`, computed
/// layer by layer. A player-owned state entering at layer k records its
/// lexicographically first successor among layers < k, so following the
/// recorded choices strictly decreases the layer. States not owned by the
/// player (opponent or probabilistic) enter once all their successors in
/// the mask are attracted.
inline StateSet attractor(const Arena& a, const StateSet& mask, Player player,
                          const StateSet& target,
                          std::vector<StateIndex>* choice = nullptr) {
  const std::size_t n = a.size();
  StateSet attr(n);
  std::vector<StateIndex> layer;
  for (auto s : target.members())
    if (mask.contains(s)) {
      attr.insert(s);
      layer.push_back(s);
    }
  std::vector<int> remaining(n, -1);
  std::vector<bool> queued(n, false);
  while (!layer.empty()) {
    std::vector<StateIndex> next;
    for (auto v : layer)
      for (auto u : a.pred[v]) {
        if (!mask.contains(u) || attr.contains(u) || queued[u]) continue;
        if (owns(a, u, player)) {
          queued[u] = true;
          next.push_back(u);
          continue;
        }
        if (remaining[u] < 0) {
          remaining[u] = 0;
          for (auto w : a.succ[u])
            if (mask.contains(w)) ++remaining[u];
        }
        if (--remaining[u] == 0) {
          queued[u] = true;
          next.push_back(u);
        }
      }
    std::sort(next.begin(), next.end());
    if (choice)
      for (auto u : next)
        if (owns(a, u, player)) (*choice)[u] = first_successor_in(a, u, attr);
    for (auto u : next) attr.insert(u);
    layer = std::move(next);
  }
  return attr;
}

/// Zielonka's recursive algorithm on the subgame `sub` (a trap for neither
/// player is required only in the sense that every state keeps a successor
/// inside `sub`, which holds for every subgame the recursion creates).
inline std::array<StateSet, 2> zielonka(const Arena& a, const PriorityMap& pr,
                                        const StateSet& sub,
                                        std::vector<StateIndex>& choice) {
  const std::size_t n = a.size();
  std::array<StateSet, 2> res{StateSet(n), StateSet(n)};
  if (sub.empty()) return res;
  const auto members = sub.members();
  int p = std::numeric_limits<int>::max();
  for (auto s : members) p = std::min(p, pr[s]);
  const int x = p % 2;
  const Player px = player_of(x);
  StateSet top(n);
  for (auto s : members)
    if (pr[s] == p) top.insert(s);

  const StateSet attr_x = attractor(a, sub, px, top, &choice);
  auto first = zielonka(a, pr, sub - attr_x, choice);
  if (first[1 - x].empty()) {
    for (auto u : top.members())
      if (owns(a, u, px)) choice[u] = first_successor_in(a, u, sub);
    res[x] = sub;
    return res;
  }
  const StateSet attr_y =
      attractor(a, sub, player_of(1 - x), first[1 - x], &choice);
  auto second = zielonka(a, pr, sub - attr_y, choice);
  res[x] = std::move(second[x]);
  res[1 - x] = std::move(second[1 - x]);
  res[1 - x] |= attr_y;
  return res;
}

inline RawSolution solve_parity(const Arena& a, const PriorityMap& pr) {
  RawSolution r;
  r.choice.assign(a.size(), kNoState);
  r.win = zielonka(a, pr, StateSet::full(a.size()), r.choice);
  return r;
}

inline RawSolution solve_reach(const Arena& a, const StateSet& target) {
  const std::size_t n = a.size();
  const StateSet all = StateSet::full(n);
  RawSolution r;
  r.choice.assign(n, kNoState);
  r.win[0] = attractor(a, all, Player::P1, target, &r.choice);
  r.win[1] = r.win[0].complement();
  for (auto s : target.members())
    if (owns(a, s, Player::P1)) r.choice[s] = a.succ[s].front();
  for (auto s : r.win[1].members())
    if (owns(a, s, Player::P2)) r.choice[s] = first_successor_in(a, s, r.win[1]);
  return r;
}

inline RawSolution solve_safe(const Arena& a, const StateSet& safe) {
  const std::size_t n = a.size();
  const StateSet all = StateSet::full(n);
  const StateSet unsafe = safe.complement();
  RawSolution r;
  r.choice.assign(n, kNoState);
  r.win[1] = attractor(a, all, Player::P2, unsafe, &r.choice);
  r.win[0] = r.win[1].complement();
  for (auto s : unsafe.members())
    if (owns(a, s, Player::P2)) r.choice[s] = a.succ[s].front();
  for (auto s : r.win[0].members())
    if (owns(a, s, Player::P1)) r.choice[s] = first_successor_in(a, s, r.win[0]);
  return r;
}

/// Classical Buchi fixpoint for `player` visiting `accepting` infinitely
/// often: repeatedly remove the opponent attractor of the states from which
/// the accepting set cannot be forced.
inline RawSolution solve_buchi(const Arena& a, Player player,
                               const StateSet& accepting) {
  const std::size_t n = a.size();
  const int x = index_of(player);
  const Player other = opponent(player);
  RawSolution r;
  r.choice.assign(n, kNoState);
  r.win[0] = StateSet(n);
  r.win[1] = StateSet(n);
  StateSet game = StateSet::full(n);
  while (true) {
    const StateSet reach = attractor(a, game, player, accepting & game, &r.choice);
    const StateSet trap = game - reach;
    if (trap.empty()) {
      for (auto u : (accepting & game).members())
        if (owns(a, u, player)) r.choice[u] = first_successor_in(a, u, game);
      r.win[x] = game;
      return r;
    }
    for (auto u : trap.members())
      if (owns(a, u, other)) r.choice[u] = first_successor_in(a, u, trap);
    const StateSet lost = attractor(a, game, other, trap, &r.choice);
    r.win[1 - x] |= lost;
    game -= lost;
  }
}

inline SolveResult to_result(const Arena& a, RawSolution raw) {
  const std::size_t n = a.size();
  SolveResult out{std::move(raw.win[0]), std::move(raw.win[1]),
                  MemorylessStrategy(Player::P1, n),
                  MemorylessStrategy(Player::P2, n)};
  for (StateIndex s = 0; s < n; ++s) {
    if (owns(a, s, Player::P1) && out.win1.contains(s))
      out.strat1.set(s, raw.choice[s]);
    if (owns(a, s, Player::P2) && out.win2.contains(s))
      out.strat2.set(s, raw.choice[s]);
  }
  return out;
}

inline RawSolution solve_raw(const Arena& a, const Objective& obj) {
  switch (obj.kind) {
    case ObjectiveKind::Reach: return solve_reach(a, obj.target);
    case ObjectiveKind::Safe: return solve_safe(a, obj.target);
    case ObjectiveKind::Buchi: return solve_buchi(a, Player::P1, obj.target);
    case ObjectiveKind::CoBuchi:
      return solve_buchi(a, Player::P2, obj.target.complement());
    case ObjectiveKind::Parity: return solve_parity(a, obj.priority);
  }
  return {};
}

/// States from which some cycle with even minimal priority is reachable.
inline StateSet cooperative_win(const Arena& a, const PriorityMap& pr) {
  const std::size_t n = a.size();
  StateSet good(n);
  std::vector<int> evens;
  for (int p : pr)
    if (even(p)) evens.push_back(p);
  std::sort(evens.begin(), evens.end());
  evens.erase(std::unique(evens.begin(), evens.end()), evens.end());
  for (int k : evens) {
    StateSet sub(n);
    for (StateIndex s = 0; s < n; ++s)
      if (pr[s] >= k) sub.insert(s);
    const auto scc = strongly_connected_components(a, sub);
    for (std::size_t c = 0; c < scc.count(); ++c) {
      if (!scc.nontrivial[c]) continue;
      const auto& comp = scc.members[c];
      if (std::any_of(comp.begin(), comp.end(),
                      [&](StateIndex s) { return pr[s] == k; }))
        for (auto s : comp) good.insert(s);
    }
  }
  return backward_reach(a, StateSet::full(n), good);
}

/// Same arena with probabilistic states handed to player 2.
inline Arena with_random_as_player2(const Arena& a) {
  Arena out = a;
  for (auto& o : out.owner)
    if (o == Owner::Prob) o = Owner::P2;
  return out;
}

}  // namespace detail

/// Least superset of `target` closed under: player-owned states with a
/// successor inside, other states with all successors inside.
inline StateSet attractor(const GameGraph& g, Player player,
                          const StateSet& target) {
  if (target.universe() != g.size())
    throw PreconditionError("target set does not match the graph");
  return detail::attractor(g.arena(), StateSet::full(g.size()), player, target);
}

/// Sure-winning regions and memoryless strategies on a deterministic graph.
/// Parity uses Zielonka's algorithm, Buchi/CoBuchi the classical fixpoint,
/// Reach/Safe a single attractor.
inline SolveResult solve(const GameGraph& g, const Objective& obj) {
  if (!g.deterministic())
    throw PreconditionError("solve needs a deterministic game graph");
  check_objective(g, obj);
  return detail::to_result(g.arena(), detail::solve_raw(g.arena(), obj));
}

/// Win_{1,2}: states from which the two players together can produce a play
/// satisfying the parity condition.
inline StateSet cooperative_win(const GameGraph& g, const PriorityMap& pr) {
  if (pr.size() != g.size())
    throw PreconditionError("priority map does not match the graph");
  return detail::cooperative_win(g.arena(), pr);
}

inline StateSet cooperative_win(const GameGraph& g, const Objective& obj) {
  if (obj.kind != ObjectiveKind::Parity)
    throw PreconditionError(
        "cooperative_win needs a parity objective; convert with to_parity");
  return cooperative_win(g, obj.priority);
}

}  // namespace assumekit
