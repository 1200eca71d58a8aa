#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "assumekit/error.hpp"
#include "assumekit/state_set.hpp"

namespace assumekit {

enum class Owner : std::uint8_t { P1, P2, Prob };
enum class Player : std::uint8_t { P1, P2 };

inline Player opponent(Player p) {
  return p == Player::P1 ? Player::P2 : Player::P1;
}

inline bool owned_by(Owner o, Player p) {
  return (o == Owner::P1 && p == Player::P1) ||
         (o == Owner::P2 && p == Player::P2);
}

inline const char* to_string(Owner o) {
  switch (o) {
    case Owner::P1: return "P1";
    case Owner::P2: return "P2";
    case Owner::Prob: return "PROB";
  }
  return "?";
}

inline const char* to_string(Player p) { return p == Player::P1 ? "P1" : "P2"; }

using Rational = boost::rational<std::int64_t>;

/// A letter of 2^AP: the set of propositions that hold.
using Letter = std::set<std::string>;

inline constexpr StateIndex kNoState = static_cast<StateIndex>(-1);

/// Index-based graph skeleton shared by every algorithm. Successor and
/// predecessor lists are sorted ascending and free of duplicates.
struct Arena {
  std::vector<Owner> owner;
  std::vector<std::vector<StateIndex>> succ;
  std::vector<std::vector<StateIndex>> pred;

  std::size_t size() const { return owner.size(); }

  static Arena build(std::vector<Owner> owner,
                     std::vector<std::vector<StateIndex>> succ) {
    Arena a;
    a.owner = std::move(owner);
    a.succ = std::move(succ);
    a.pred.assign(a.owner.size(), {});
    for (auto& list : a.succ) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (StateIndex u = 0; u < a.succ.size(); ++u)
      for (auto v : a.succ[u]) a.pred[v].push_back(u);
    return a;
  }

  bool has_edge(StateIndex u, StateIndex v) const {
    return std::binary_search(succ[u].begin(), succ[u].end(), v);
  }
};

/// A directed edge by state index. Ordering is (source, target), which for
/// a GameGraph coincides with lexicographic order of the ids.
struct Edge {
  StateIndex src = kNoState;
  StateIndex dst = kNoState;
  auto operator<=>(const Edge&) const = default;
};

using EdgeSet = std::set<Edge>;

struct StateRecord {
  std::string id;
  Owner owner = Owner::P1;
  std::optional<int> priority;
  std::optional<Letter> label;

  bool operator==(const StateRecord&) const = default;
};

using IdEdge = std::pair<std::string, std::string>;
using Distribution = std::map<std::string, std::map<std::string, Rational>>;

/// Validated deterministic or probabilistic game graph.
///
/// States are stored sorted by id, so StateIndex order is lexicographic id
/// order and every algorithm iterating indices is deterministic. Immutable
/// after construction.
class GameGraph {
 public:
  GameGraph() = default;

  /// Validates every invariant; throws ValidationError naming the offending
  /// field ("states[2]", "edges[5]", "dist.v", ...).
  GameGraph(std::vector<StateRecord> states, const std::vector<IdEdge>& edges,
            const Distribution& dist = {},
            const std::optional<std::string>& initial = std::nullopt) {
    std::vector<std::size_t> order(states.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return states[a].id < states[b].id;
    });
    records_.reserve(states.size());
    for (auto i : order) {
      if (states[i].id.empty())
        throw ValidationError("empty state id",
                              "states[" + std::to_string(i) + "]");
      if (!records_.empty() && records_.back().id == states[i].id)
        throw ValidationError("duplicate state id '" + states[i].id + "'",
                              "states[" + std::to_string(i) + "]");
      records_.push_back(std::move(states[i]));
    }
    for (StateIndex i = 0; i < records_.size(); ++i)
      index_.emplace(records_[i].id, i);

    std::vector<Owner> owner(records_.size());
    for (StateIndex i = 0; i < records_.size(); ++i) owner[i] = records_[i].owner;
    std::vector<std::vector<StateIndex>> succ(records_.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string field = "edges[" + std::to_string(k) + "]";
      auto u = find(edges[k].first);
      auto v = find(edges[k].second);
      if (!u)
        throw ValidationError("unknown source state '" + edges[k].first + "'",
                              field);
      if (!v)
        throw ValidationError("unknown target state '" + edges[k].second + "'",
                              field);
      succ[*u].push_back(*v);
    }
    arena_ = Arena::build(std::move(owner), std::move(succ));

    for (StateIndex i = 0; i < records_.size(); ++i)
      if (arena_.succ[i].empty())
        throw ValidationError("dead end: state '" + records_[i].id +
                                  "' has no outgoing edge",
                              "states." + records_[i].id);

    dist_.assign(records_.size(), {});
    for (const auto& [src, weights] : dist) {
      const std::string field = "dist." + src;
      auto s = find(src);
      if (!s) throw ValidationError("unknown state '" + src + "'", field);
      if (records_[*s].owner != Owner::Prob)
        throw ValidationError("distribution given for non-probabilistic state",
                              field);
      Rational total = 0;
      for (const auto& [dst, w] : weights) {
        auto t = find(dst);
        if (!t) throw ValidationError("unknown state '" + dst + "'", field);
        if (w <= Rational(0))
          throw ValidationError("weight for '" + dst + "' must be positive",
                                field);
        if (!arena_.has_edge(*s, *t))
          throw ValidationError("weight for '" + dst + "' but no edge", field);
        dist_[*s].emplace_back(*t, w);
        total += w;
      }
      if (total != Rational(1))
        throw ValidationError("weights sum to " + to_string(total) +
                                  ", expected 1",
                              field);
    }
    for (StateIndex s = 0; s < records_.size(); ++s) {
      if (records_[s].owner != Owner::Prob) continue;
      if (dist_[s].size() != arena_.succ[s].size())
        throw ValidationError(
            "probabilistic state needs a positive weight on every edge",
            "dist." + records_[s].id);
      std::sort(dist_[s].begin(), dist_[s].end());
    }

    if (initial) {
      auto s = find(*initial);
      if (!s)
        throw ValidationError("unknown initial state '" + *initial + "'",
                              "initial");
      initial_ = *s;
    }
  }

  std::size_t size() const { return records_.size(); }
  std::size_t num_edges() const {
    std::size_t n = 0;
    for (const auto& l : arena_.succ) n += l.size();
    return n;
  }

  const std::string& id(StateIndex s) const { return records_[s].id; }
  const StateRecord& record(StateIndex s) const { return records_[s]; }
  const std::vector<StateRecord>& records() const { return records_; }

  std::optional<StateIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Like find() but throws PreconditionError for unknown ids.
  StateIndex at(std::string_view id) const {
    auto s = find(id);
    if (!s) throw PreconditionError("unknown state '" + std::string(id) + "'");
    return *s;
  }

  Owner owner(StateIndex s) const { return arena_.owner[s]; }
  std::span<const StateIndex> successors(StateIndex s) const {
    return arena_.succ[s];
  }
  std::span<const StateIndex> predecessors(StateIndex s) const {
    return arena_.pred[s];
  }
  bool has_edge(StateIndex u, StateIndex v) const {
    return arena_.has_edge(u, v);
  }

  std::optional<int> priority(StateIndex s) const {
    return records_[s].priority;
  }
  const std::optional<Letter>& label(StateIndex s) const {
    return records_[s].label;
  }

  /// Sorted (successor, weight) pairs; empty for non-probabilistic states.
  std::span<const std::pair<StateIndex, Rational>> distribution(
      StateIndex s) const {
    return dist_[s];
  }

  std::optional<StateIndex> initial() const { return initial_; }
  const Arena& arena() const { return arena_; }

  bool deterministic() const {
    return std::none_of(arena_.owner.begin(), arena_.owner.end(),
                        [](Owner o) { return o == Owner::Prob; });
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (StateIndex u = 0; u < size(); ++u)
      for (auto v : arena_.succ[u]) out.push_back({u, v});
    return out;
  }

  /// Edges whose source is a player-2 state, in lexicographic order.
  EdgeSet player2_edges() const {
    EdgeSet out;
    for (StateIndex u = 0; u < size(); ++u)
      if (owner(u) == Owner::P2)
        for (auto v : arena_.succ[u]) out.insert({u, v});
    return out;
  }

  StateSet states_of(Owner o) const {
    StateSet out(size());
    for (StateIndex s = 0; s < size(); ++s)
      if (owner(s) == o) out.insert(s);
    return out;
  }

  /// Every state carries a priority.
  bool has_priorities() const {
    return std::all_of(records_.begin(), records_.end(),
                       [](const auto& r) { return r.priority.has_value(); });
  }

  std::vector<int> priorities() const {
    std::vector<int> p(size());
    for (StateIndex s = 0; s < size(); ++s) {
      if (!records_[s].priority)
        throw PreconditionError("state '" + id(s) + "' has no priority");
      p[s] = *records_[s].priority;
    }
    return p;
  }

  bool operator==(const GameGraph& o) const {
    if (records_ != o.records_ || initial_ != o.initial_) return false;
    if (arena_.succ != o.arena_.succ) return false;
    return dist_ == o.dist_;
  }

  static std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" +
           std::to_string(r.denominator());
  }

 private:
  std::vector<StateRecord> records_;
  std::unordered_map<std::string, StateIndex> index_;
  Arena arena_;
  std::vector<std::vector<std::pair<StateIndex, Rational>>> dist_;
  std::optional<StateIndex> initial_;
};

// Id-level helpers.

inline Edge edge(const GameGraph& g, std::string_view src, std::string_view dst) {
  Edge e{g.at(src), g.at(dst)};
  if (!g.has_edge(e.src, e.dst))
    throw PreconditionError("no edge (" + std::string(src) + "," +
                            std::string(dst) + ")");
  return e;
}

inline EdgeSet edges(const GameGraph& g, const std::vector<IdEdge>& list) {
  EdgeSet out;
  for (const auto& [u, v] : list) out.insert(edge(g, u, v));
  return out;
}

inline std::vector<IdEdge> ids(const GameGraph& g, const EdgeSet& es) {
  std::vector<IdEdge> out;
  for (auto e : es) out.emplace_back(g.id(e.src), g.id(e.dst));
  return out;
}

inline StateSet states(const GameGraph& g,
                       const std::vector<std::string>& list) {
  StateSet out(g.size());
  for (const auto& s : list) out.insert(g.at(s));
  return out;
}

inline std::vector<std::string> ids(const GameGraph& g, const StateSet& set) {
  std::vector<std::string> out;
  for (auto s : set.members()) out.push_back(g.id(s));
  return out;
}

/// Throws PreconditionError unless every edge leaves a player-2 state.
inline void require_player2_edges(const GameGraph& g, const EdgeSet& es) {
  for (auto e : es) {
    if (e.src >= g.size() || e.dst >= g.size() || !g.has_edge(e.src, e.dst))
      throw PreconditionError("edge is not in the graph");
    if (g.owner(e.src) != Owner::P2)
      throw PreconditionError("edge (" + g.id(e.src) + "," + g.id(e.dst) +
                              ") does not leave a player-2 state");
  }
}

/// Returns an id not present in g, starting from `base`.
inline std::string fresh_id(const GameGraph& g, std::string base) {
  while (g.find(base)) base += "'";
  return base;
}

}  // namespace assumekit
