#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/scc.hpp"
#include "assumekit/solvers.hpp"

namespace assumekit {

/// Forbidden player-2 edges together with Win_{1,2}, the region the
/// assumption keeps player 2 inside.
struct SafetyAssumption {
  EdgeSet edges;
  StateSet safe_region;
};

/// G with every forbidden edge redirected to a fresh player-1 sink.
struct SafeTransform {
  GameGraph game;
  PriorityMap priority;
  StateIndex sink = kNoState;
  std::vector<StateIndex> image;  // original index -> index in `game`
};

/// E_s = player-2 edges from Win_{1,2} to its complement.
inline SafetyAssumption compute_safety_assumption(const GameGraph& g,
                                                  const PriorityMap& p) {
  if (!g.deterministic())
    throw PreconditionError("safety assumptions need a deterministic graph");
  SafetyAssumption out{{}, cooperative_win(g, p)};
  for (auto e : g.player2_edges())
    if (out.safe_region.contains(e.src) && !out.safe_region.contains(e.dst))
      out.edges.insert(e);
  return out;
}

/// Redirects each edge of `forbidden` to a new player-1 sink (id "top", or
/// a fresh variant of it) with priority 0 and a self-loop.
inline SafeTransform assume_safe_transform(const GameGraph& g,
                                           const PriorityMap& p,
                                           const EdgeSet& forbidden) {
  require_player2_edges(g, forbidden);
  if (p.size() != g.size())
    throw PreconditionError("priority map does not match the graph");
  const std::string top = fresh_id(g, "top");
  std::vector<StateRecord> records = g.records();
  for (StateIndex s = 0; s < g.size(); ++s) records[s].priority = p[s];
  records.push_back({top, Owner::P1, 0, std::nullopt});
  std::vector<IdEdge> edge_list;
  for (auto e : g.edges()) {
    if (forbidden.count(e))
      edge_list.emplace_back(g.id(e.src), top);
    else
      edge_list.emplace_back(g.id(e.src), g.id(e.dst));
  }
  edge_list.emplace_back(top, top);
  SafeTransform out;
  out.game = GameGraph(std::move(records), edge_list, {},
                       g.initial() ? std::optional(g.id(*g.initial()))
                                   : std::nullopt);
  out.priority = out.game.priorities();
  out.sink = out.game.at(top);
  out.image.resize(g.size());
  for (StateIndex s = 0; s < g.size(); ++s) out.image[s] = out.game.at(g.id(s));
  return out;
}

/// Player 1 sure-wins AssumeSafe(cand, Safe(Win_{1,2})) from s: on the
/// transformed game every play either stays in Win_{1,2} or reaches the
/// sink. A play that leaves Win_{1,2} never returns, so priority 1 outside
/// and 0 elsewhere encodes this as a co-Buchi condition; a lost state that
/// player 2 can only leave through a candidate edge still counts as a win.
inline bool is_safe_sufficient(const GameGraph& g, const PriorityMap& p,
                               const EdgeSet& cand, StateIndex s) {
  if (s >= g.size()) throw PreconditionError("unknown state");
  const StateSet coop = cooperative_win(g, p);
  const SafeTransform t = assume_safe_transform(g, p, cand);
  PriorityMap q(t.game.size(), 1);
  for (auto u : coop.members()) q[t.image[u]] = 0;
  q[t.sink] = 0;
  return solve(t.game, Objective::parity(q)).win1.contains(t.image[s]);
}

/// Some cooperative play from s takes a candidate edge and stays inside
/// Win_{1,2} forever. Win_{1,2} has no dead ends from inside (every state
/// in it has a successor in it), so it suffices to find a candidate edge
/// with both ends in Win_{1,2} whose source s reaches inside Win_{1,2}.
inline bool is_restrictive(const GameGraph& g, const PriorityMap& p,
                           const EdgeSet& cand, StateIndex s) {
  if (s >= g.size()) throw PreconditionError("unknown state");
  require_player2_edges(g, cand);
  const StateSet coop = cooperative_win(g, p);
  const StateSet reach = forward_reach(
      g.size(), coop, s,
      [&](StateIndex u) -> const std::vector<StateIndex>& {
        return g.arena().succ[u];
      });
  for (auto e : cand)
    if (reach.contains(e.src) && coop.contains(e.dst)) return true;
  return false;
}

namespace detail {

/// States from which player 2 can avoid `forbidden` forever. Each forbidden
/// edge is cut into a marker state; player 2 avoids the edges iff it
/// avoids the markers.
inline StateSet avoid_region(const Arena& a, const EdgeSet& forbidden) {
  const std::size_t n = a.size();
  std::vector<Owner> owner = a.owner;
  for (auto& o : owner)
    if (o == Owner::Prob) o = Owner::P1;  // sure avoidance: chance is hostile
  std::vector<std::vector<StateIndex>> succ = a.succ;
  for (auto e : forbidden) {
    const auto marker = static_cast<StateIndex>(owner.size());
    owner.push_back(Owner::P1);
    succ.push_back({marker});
    auto& list = succ[e.src];
    *std::find(list.begin(), list.end(), e.dst) = marker;
  }
  const Arena marked = Arena::build(std::move(owner), std::move(succ));
  StateSet markers(marked.size());
  for (StateIndex m = n; m < marked.size(); ++m) markers.insert(m);
  const StateSet lost =
      attractor(marked, StateSet::full(marked.size()), Player::P1, markers);
  StateSet out(n);
  for (StateIndex s = 0; s < n; ++s)
    if (!lost.contains(s)) out.insert(s);
  return out;
}

}  // namespace detail

/// Player 2 can make sure no edge of `forbidden` is ever traversed from s.
inline bool env_can_avoid(const GameGraph& g, const EdgeSet& forbidden,
                          StateIndex s) {
  if (s >= g.size()) throw PreconditionError("unknown state");
  require_player2_edges(g, forbidden);
  return detail::avoid_region(g.arena(), forbidden).contains(s);
}

}  // namespace assumekit
