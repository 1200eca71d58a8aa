#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assumekit/graph.hpp"

namespace assumekit {

/// Memoryless strategy: a successor for (some of) the states of one player.
class MemorylessStrategy {
 public:
  MemorylessStrategy() = default;
  MemorylessStrategy(Player player, std::size_t num_states)
      : player_(player), choice_(num_states, kNoState) {}

  Player player() const { return player_; }
  std::size_t universe() const { return choice_.size(); }

  bool defined(StateIndex s) const {
    return s < choice_.size() && choice_[s] != kNoState;
  }
  std::optional<StateIndex> get(StateIndex s) const {
    if (!defined(s)) return std::nullopt;
    return choice_[s];
  }
  StateIndex operator[](StateIndex s) const { return choice_[s]; }
  void set(StateIndex s, StateIndex t) { choice_[s] = t; }
  void clear(StateIndex s) { choice_[s] = kNoState; }

  /// Throws PreconditionError if a choice is not an available move or sits
  /// on a state the player does not own.
  void validate(const GameGraph& g) const {
    if (choice_.size() != g.size())
      throw PreconditionError("strategy does not match the graph");
    for (StateIndex s = 0; s < g.size(); ++s) {
      if (!defined(s)) continue;
      if (!owned_by(g.owner(s), player_))
        throw PreconditionError(std::string(to_string(player_)) +
                                " strategy defined on state '" + g.id(s) +
                                "' it does not own");
      if (!g.has_edge(s, choice_[s]))
        throw PreconditionError("strategy maps '" + g.id(s) +
                                "' to non-successor '" + g.id(choice_[s]) + "'");
    }
  }

  /// Every state owned by the player has a choice.
  bool total(const GameGraph& g) const {
    for (StateIndex s = 0; s < g.size(); ++s)
      if (owned_by(g.owner(s), player_) && !defined(s)) return false;
    return true;
  }

  /// Fills undefined owned states with their lexicographically first
  /// successor.
  MemorylessStrategy completed(const GameGraph& g) const {
    MemorylessStrategy out = *this;
    for (StateIndex s = 0; s < g.size(); ++s)
      if (owned_by(g.owner(s), player_) && !defined(s))
        out.set(s, g.successors(s).front());
    return out;
  }

  bool operator==(const MemorylessStrategy&) const = default;

 private:
  Player player_ = Player::P1;
  std::vector<StateIndex> choice_;
};

/// Restricts every state owned by a fixed player to its chosen edge.
/// Probabilistic states keep their edges and distribution. With both
/// strategies fixed on a deterministic graph every state has out-degree 1.
inline GameGraph induced_structure(
    const GameGraph& g, const MemorylessStrategy& first,
    const std::optional<MemorylessStrategy>& second = std::nullopt) {
  std::vector<const MemorylessStrategy*> fixed{&first};
  if (second) fixed.push_back(&*second);
  for (auto* st : fixed) {
    st->validate(g);
    if (!st->total(g))
      throw PreconditionError(std::string(to_string(st->player())) +
                              " strategy does not cover all its states");
  }
  std::vector<IdEdge> out_edges;
  Distribution dist;
  for (StateIndex s = 0; s < g.size(); ++s) {
    const MemorylessStrategy* chooser = nullptr;
    for (auto* st : fixed)
      if (owned_by(g.owner(s), st->player())) chooser = st;
    if (chooser) {
      out_edges.emplace_back(g.id(s), g.id((*chooser)[s]));
      continue;
    }
    for (auto t : g.successors(s)) out_edges.emplace_back(g.id(s), g.id(t));
    for (const auto& [t, w] : g.distribution(s)) dist[g.id(s)][g.id(t)] = w;
  }
  return GameGraph(g.records(), out_edges, dist,
                   g.initial() ? std::optional(g.id(*g.initial()))
                               : std::nullopt);
}

/// Ultimately periodic sequence stem . cycle^omega.
template <typename T>
struct Lasso {
  std::vector<T> stem;
  std::vector<T> cycle;

  std::size_t length() const { return stem.size() + cycle.size(); }
  const T& at(std::size_t i) const {
    return i < stem.size() ? stem[i] : cycle[(i - stem.size()) % cycle.size()];
  }
  bool operator==(const Lasso&) const = default;
};

using LassoPlay = Lasso<StateIndex>;
using LassoWord = Lasso<Letter>;

/// Checks that the play is a path of g (including the stem/cycle joint and
/// the cycle wrap-around).
inline void validate_play(const GameGraph& g, const LassoPlay& play) {
  if (play.cycle.empty()) throw PreconditionError("lasso cycle is empty");
  for (std::size_t i = 0; i < play.length(); ++i) {
    const StateIndex u = play.at(i);
    const StateIndex v = play.at(i + 1);
    if (u >= g.size() || v >= g.size() || !g.has_edge(u, v))
      throw PreconditionError("play step " + std::to_string(i) +
                              " is not an edge");
  }
}

}  // namespace assumekit
