#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "assumekit/graph.hpp"

namespace assumekit {

struct SccDecomposition {
  /// Component id per state, -1 for states outside the mask.
  std::vector<int> component;
  /// Members per component, ascending. Components appear in Tarjan
  /// completion order: every edge between components goes from a higher id
  /// to a lower one.
  std::vector<std::vector<StateIndex>> members;
  /// Component contains a cycle (more than one state or a self-loop).
  std::vector<bool> nontrivial;

  std::size_t count() const { return members.size(); }
};

/// Tarjan's algorithm, iterative, on the subgraph induced by `mask`.
/// `succ(u)` yields the successors of u; those outside the mask are skipped.
template <typename SuccFn>
SccDecomposition strongly_connected_components(std::size_t n,
                                               const StateSet& mask,
                                               SuccFn&& succ) {
  SccDecomposition out;
  out.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateIndex> stack;
  struct Frame {
    StateIndex node;
    std::vector<StateIndex> next;
    std::size_t pos;
  };
  std::vector<Frame> call;
  int counter = 0;

  for (StateIndex root = 0; root < n; ++root) {
    if (!mask.contains(root) || index[root] >= 0) continue;
    auto open = [&](StateIndex v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      Frame f{v, {}, 0};
      for (auto w : succ(v))
        if (mask.contains(w)) f.next.push_back(w);
      call.push_back(std::move(f));
    };
    open(root);
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.pos < f.next.size()) {
        const StateIndex w = f.next[f.pos++];
        if (index[w] < 0) {
          open(w);
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const StateIndex v = f.node;
      bool self_loop = std::find(f.next.begin(), f.next.end(), v) != f.next.end();
      call.pop_back();
      if (!call.empty())
        low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] != index[v]) continue;
      const int id = static_cast<int>(out.members.size());
      std::vector<StateIndex> comp;
      StateIndex w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        out.component[w] = id;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.nontrivial.push_back(comp.size() > 1 || self_loop);
      out.members.push_back(std::move(comp));
    }
  }
  return out;
}

inline SccDecomposition strongly_connected_components(const Arena& a,
                                                      const StateSet& mask) {
  return strongly_connected_components(
      a.size(), mask, [&](StateIndex u) -> const std::vector<StateIndex>& {
        return a.succ[u];
      });
}

/// States of `mask` that can reach `target` using only states of `mask`.
inline StateSet backward_reach(const Arena& a, const StateSet& mask,
                               const StateSet& target) {
  StateSet seen(a.size());
  std::vector<StateIndex> todo;
  for (auto t : target.members())
    if (mask.contains(t)) {
      seen.insert(t);
      todo.push_back(t);
    }
  while (!todo.empty()) {
    const StateIndex v = todo.back();
    todo.pop_back();
    for (auto u : a.pred[v])
      if (mask.contains(u) && !seen.contains(u)) {
        seen.insert(u);
        todo.push_back(u);
      }
  }
  return seen;
}

/// States reachable from `from` inside `mask`.
template <typename SuccFn>
StateSet forward_reach(std::size_t n, const StateSet& mask, StateIndex from,
                       SuccFn&& succ) {
  StateSet seen(n);
  if (!mask.contains(from)) return seen;
  std::vector<StateIndex> todo{from};
  seen.insert(from);
  while (!todo.empty()) {
    const StateIndex u = todo.back();
    todo.pop_back();
    for (auto v : succ(u))
      if (mask.contains(v) && !seen.contains(v)) {
        seen.insert(v);
        todo.push_back(v);
      }
  }
  return seen;
}

}  // namespace assumekit
