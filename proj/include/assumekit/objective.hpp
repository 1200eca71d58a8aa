#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "assumekit/graph.hpp"

namespace assumekit {

/// Priority of every state. Min-parity: a play is won by player 1 iff the
/// least priority seen infinitely often is even.
using PriorityMap = std::vector<int>;

enum class ObjectiveKind { Reach, Safe, Buchi, CoBuchi, Parity };

inline const char* to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::Reach: return "reach";
    case ObjectiveKind::Safe: return "safe";
    case ObjectiveKind::Buchi: return "buchi";
    case ObjectiveKind::CoBuchi: return "cobuchi";
    case ObjectiveKind::Parity: return "parity";
  }
  return "?";
}

inline std::optional<ObjectiveKind> objective_kind(std::string_view name) {
  for (auto k : {ObjectiveKind::Reach, ObjectiveKind::Safe,
                 ObjectiveKind::Buchi, ObjectiveKind::CoBuchi,
                 ObjectiveKind::Parity})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

/// Player-1 objective. Reach and Safe are solved directly on the graph;
/// Buchi and CoBuchi also have a parity encoding (see to_parity).
struct Objective {
  ObjectiveKind kind = ObjectiveKind::Parity;
  StateSet target;       // Reach, Safe, Buchi, CoBuchi
  PriorityMap priority;  // Parity

  static Objective reach(StateSet t) { return {ObjectiveKind::Reach, std::move(t), {}}; }
  static Objective safe(StateSet t) { return {ObjectiveKind::Safe, std::move(t), {}}; }
  static Objective buchi(StateSet t) { return {ObjectiveKind::Buchi, std::move(t), {}}; }
  static Objective co_buchi(StateSet t) {
    return {ObjectiveKind::CoBuchi, std::move(t), {}};
  }
  static Objective parity(PriorityMap p) {
    return {ObjectiveKind::Parity, StateSet(p.size()), std::move(p)};
  }

  bool operator==(const Objective&) const = default;
};

/// Number of priorities d, i.e. max priority + 1 (0 for an empty map).
inline int num_priorities(const PriorityMap& p) {
  int d = 0;
  for (int v : p) d = std::max(d, v + 1);
  return d;
}

inline bool even(int priority) { return priority % 2 == 0; }

/// Buchi(F) becomes priorities {0,1} with F = p^-1(0); CoBuchi(F) becomes
/// {1,2} with F = p^-1(2). Throws PreconditionError for Reach/Safe.
inline PriorityMap to_parity(const Objective& obj) {
  switch (obj.kind) {
    case ObjectiveKind::Parity:
      return obj.priority;
    case ObjectiveKind::Buchi: {
      PriorityMap p(obj.target.universe(), 1);
      for (auto s : obj.target.members()) p[s] = 0;
      return p;
    }
    case ObjectiveKind::CoBuchi: {
      PriorityMap p(obj.target.universe(), 1);
      for (auto s : obj.target.members()) p[s] = 2;
      return p;
    }
    default:
      throw PreconditionError(std::string(to_string(obj.kind)) +
                              " objective has no parity encoding on the same "
                              "graph; solve it directly");
  }
}

/// Checks that the objective talks about the states of g.
inline void check_objective(const GameGraph& g, const Objective& obj) {
  if (obj.kind == ObjectiveKind::Parity) {
    if (obj.priority.size() != g.size())
      throw ValidationError("priority map does not cover every state",
                            "objective.priorities");
    for (StateIndex s = 0; s < g.size(); ++s)
      if (obj.priority[s] < 0)
        throw ValidationError("negative priority for '" + g.id(s) + "'",
                              "objective.priorities");
  } else if (obj.target.universe() != g.size()) {
    throw ValidationError("target set does not match the graph",
                          "objective.target");
  }
}

/// Parity encoding of any objective whose winning condition can be read off
/// the states of g without changing the graph: Buchi, CoBuchi, Parity, plus
/// Safe(T) when S\T is closed and Reach(T) when T is closed.
inline PriorityMap parity_of(const GameGraph& g, const Objective& obj) {
  check_objective(g, obj);
  auto closed = [&](const StateSet& region) {
    for (auto s : region.members())
      for (auto t : g.successors(s))
        if (!region.contains(t)) return false;
    return true;
  };
  if (obj.kind == ObjectiveKind::Safe || obj.kind == ObjectiveKind::Reach) {
    const StateSet absorbing =
        obj.kind == ObjectiveKind::Safe ? obj.target.complement() : obj.target;
    if (!closed(absorbing))
      throw PreconditionError(
          std::string(to_string(obj.kind)) +
          " objective is not expressible as priorities on this graph: the " +
          (obj.kind == ObjectiveKind::Safe ? "unsafe" : "target") +
          " region is not closed");
    PriorityMap p(g.size(), 1);
    for (auto s : obj.target.members()) p[s] = 0;
    return p;
  }
  return to_parity(obj);
}

}  // namespace assumekit
