#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "assumekit/fair.hpp"
#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"

namespace assumekit {

/// CNF formula; literal +i / -i refers to variable i in 1..num_vars.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const {
    if (num_vars < 0) throw ValidationError("negative variable count", "cnf");
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      const std::string field = "clauses[" + std::to_string(i) + "]";
      if (clauses[i].empty() || clauses[i].size() > 3)
        throw ValidationError("clause must have 1 to 3 literals", field);
      for (int lit : clauses[i])
        if (lit == 0 || std::abs(lit) > num_vars)
          throw ValidationError("literal " + std::to_string(lit) +
                                    " out of range",
                                field);
    }
  }

  bool satisfied_by(const std::vector<bool>& value) const {
    for (const auto& cl : clauses) {
      bool any = false;
      for (int lit : cl)
        if (value[std::abs(lit) - 1] == (lit > 0)) any = true;
      if (!any) return false;
    }
    return true;
  }

  /// Brute force over all 2^n assignments.
  std::optional<std::vector<bool>> solve() const {
    for (std::uint32_t bits = 0; bits < (1u << num_vars); ++bits) {
      std::vector<bool> value(num_vars);
      for (int i = 0; i < num_vars; ++i) value[i] = bits & (1u << i);
      if (satisfied_by(value)) return value;
    }
    return std::nullopt;
  }
};

/// DIMACS CNF: comment lines start with 'c', one "p cnf <vars> <clauses>"
/// header, clauses as literal lists terminated by 0 (may span lines). A
/// line starting with '%' ends the input.
inline Cnf parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  std::size_t declared = 0;
  Cnf f;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first[0] == '%') break;
    if (first == "p") {
      std::string fmt;
      long vars = -1, count = -1;
      if (header || !(ls >> fmt >> vars >> count) || fmt != "cnf" || vars < 0 ||
          count < 0)
        throw ParseError("bad problem line", line_no, 1, "p");
      f.num_vars = static_cast<int>(vars);
      declared = static_cast<std::size_t>(count);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before problem line", line_no, 1, "");
    std::istringstream body(line);
    std::string tok;
    while (body >> tok) {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0')
        throw ParseError("bad literal '" + tok + "'", line_no, 1, "clauses");
      if (lit == 0) {
        if (current.empty())
          throw ParseError("empty clause", line_no, 1, "clauses");
        f.clauses.push_back(current);
        current.clear();
        continue;
      }
      if (std::labs(lit) > f.num_vars)
        throw ParseError("literal " + tok + " out of range", line_no, 1,
                         "clauses");
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!header) throw ParseError("missing problem line", line_no, 1, "p");
  if (!current.empty()) f.clauses.push_back(current);
  if (f.clauses.size() != declared)
    throw ParseError("header declares " + std::to_string(declared) +
                         " clauses, found " + std::to_string(f.clauses.size()),
                     line_no, 1, "p");
  try {
    f.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line_no, 1, "clauses");
  }
  return f;
}

struct ThreeSatGame {
  GameGraph graph;
  PriorityMap priority;  // B gets 0, everything else 1
  Objective objective;   // Buchi{B}
  StateIndex initial = kNoState;
  int k = 0;
};

namespace detail {

inline std::string grid_id(int row, int col, int width) {
  if (width <= 9) return std::to_string(row) + std::to_string(col);
  return std::to_string(row) + "_" + std::to_string(col);
}

}  // namespace detail

/// Hardness construction: literal states l<i>/nl<i> (player 2) choose
/// between B and Bbar; variable states v<i> and clause states c<i>
/// (player 1) choose a literal; a triangular player-2 grid with j = n + c
/// columns starts at "11". Column col has min(col + 1, j) rows; every cell
/// moves right and up where a neighbour exists, and row r of the last
/// column leads to the r-th state of v1..vn, c1..cc. B and Bbar return to
/// "11". Objective Buchi{B}, k = n.
inline ThreeSatGame gen_3sat_game(const Cnf& f) {
  f.validate();
  const int n = f.num_vars;
  const int c = static_cast<int>(f.clauses.size());
  const int j = n + c;
  if (j < 1) throw ValidationError("formula has no variables or clauses", "cnf");
  std::vector<StateRecord> records;
  std::vector<IdEdge> edge_list;
  auto add = [&](const std::string& id, Owner o, int prio) {
    records.push_back({id, o, prio, std::nullopt});
  };
  auto lit_id = [](int lit) {
    return (lit > 0 ? "l" : "nl") + std::to_string(std::abs(lit));
  };
  const std::string entry = detail::grid_id(1, 1, j);
  add("B", Owner::P2, 0);
  add("Bbar", Owner::P2, 1);
  edge_list.emplace_back("B", entry);
  edge_list.emplace_back("Bbar", entry);
  for (int i = 1; i <= n; ++i) {
    for (int lit : {i, -i}) {
      add(lit_id(lit), Owner::P2, 1);
      edge_list.emplace_back(lit_id(lit), "B");
      edge_list.emplace_back(lit_id(lit), "Bbar");
    }
    add("v" + std::to_string(i), Owner::P1, 1);
    edge_list.emplace_back("v" + std::to_string(i), lit_id(i));
    edge_list.emplace_back("v" + std::to_string(i), lit_id(-i));
  }
  for (int i = 1; i <= c; ++i) {
    const std::string id = "c" + std::to_string(i);
    add(id, Owner::P1, 1);
    std::set<int> lits(f.clauses[i - 1].begin(), f.clauses[i - 1].end());
    for (int lit : lits) edge_list.emplace_back(id, lit_id(lit));
  }
  std::vector<std::string> fan;
  for (int i = 1; i <= n; ++i) fan.push_back("v" + std::to_string(i));
  for (int i = 1; i <= c; ++i) fan.push_back("c" + std::to_string(i));
  auto height = [&](int col) { return std::min(col + 1, j); };
  for (int col = 1; col <= j; ++col)
    for (int row = 1; row <= height(col); ++row) {
      const std::string id = detail::grid_id(row, col, j);
      add(id, Owner::P2, 1);
      if (col < j) edge_list.emplace_back(id, detail::grid_id(row, col + 1, j));
      if (row < height(col))
        edge_list.emplace_back(id, detail::grid_id(row + 1, col, j));
      if (col == j) edge_list.emplace_back(id, fan[row - 1]);
    }
  ThreeSatGame out;
  out.graph = GameGraph(std::move(records), edge_list, {}, entry);
  out.priority = out.graph.priorities();
  out.objective = Objective::buchi(states(out.graph, {"B"}));
  out.initial = out.graph.at(entry);
  out.k = n;
  return out;
}

/// Number of states and edges the construction's size formulas predict.
inline std::pair<std::size_t, std::size_t> three_sat_formula_size(const Cnf& f) {
  const std::size_t n = f.num_vars, c = f.clauses.size(), j = n + c;
  return {3 * n + c + (j + 1) * (j + 2) / 2, 6 * n + 2 * c + (j + 1) * (j + 1)};
}

/// Reads an assignment off a fair set: variable i is true iff (l<i>, B) is
/// fair. Variables with neither literal edge default to false.
inline std::vector<bool> decode_assignment(const ThreeSatGame& game,
                                           const EdgeSet& fair, int n) {
  std::vector<bool> value(n, false);
  const GameGraph& g = game.graph;
  const StateIndex b = g.at("B");
  for (int i = 1; i <= n; ++i)
    if (fair.count({g.at("l" + std::to_string(i)), b})) value[i - 1] = true;
  return value;
}

struct RandomGameParams {
  std::size_t num_states = 6;
  double edge_density = 0.3;  // chance of each ordered pair being an edge
  int num_priorities = 3;
  double prob_fraction = 0.0;  // chance of a state being probabilistic
};

namespace detail {

/// Seeded source with a fixed mapping from raw 64-bit outputs, so results do
/// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

/// Reproducible random game. Ids are "s" plus a zero-padded index. Every
/// state without a sampled edge gets one uniformly random successor.
/// Probabilistic states use uniform weights; states carry priorities in
/// [0, num_priorities).
inline GameGraph random_game(const RandomGameParams& params, std::uint64_t seed) {
  if (params.num_states < 1 || params.num_states > 100000)
    throw PreconditionError("num_states must be in [1, 100000]");
  if (!(params.edge_density >= 0 && params.edge_density <= 1))
    throw PreconditionError("edge_density must be in [0, 1]");
  if (params.num_priorities < 1 || params.num_priorities > 64)
    throw PreconditionError("num_priorities must be in [1, 64]");
  if (!(params.prob_fraction >= 0 && params.prob_fraction <= 1))
    throw PreconditionError("prob_fraction must be in [0, 1]");
  detail::Rng rng(seed);
  const std::size_t n = params.num_states;
  const std::size_t width = std::max<std::size_t>(2, std::to_string(n - 1).size());
  auto name = [&](std::size_t i) {
    std::string digits = std::to_string(i);
    return "s" + std::string(width - digits.size(), '0') + digits;
  };
  std::vector<StateRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    Owner o;
    if (rng.chance(params.prob_fraction))
      o = Owner::Prob;
    else
      o = rng.below(2) == 0 ? Owner::P1 : Owner::P2;
    const int prio = static_cast<int>(rng.below(params.num_priorities));
    records.push_back({name(i), o, prio, std::nullopt});
  }
  std::vector<IdEdge> edge_list;
  Distribution dist;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> targets;
    for (std::size_t t = 0; t < n; ++t)
      if (rng.chance(params.edge_density)) targets.push_back(t);
    if (targets.empty()) targets.push_back(rng.below(n));
    for (auto t : targets) {
      edge_list.emplace_back(name(i), name(t));
      if (records[i].owner == Owner::Prob)
        dist[name(i)][name(t)] =
            Rational(1, static_cast<std::int64_t>(targets.size()));
    }
  }
  return GameGraph(std::move(records), edge_list, dist);
}

namespace detail {

/// Player-2 edges whose source has another edge. A fair edge out of a
/// single-successor state is taken whenever its source is, so it never
/// changes AssumeFair and can be left out of subset searches.
inline std::vector<Edge> branching_player2_edges(const GameGraph& g) {
  std::vector<Edge> out;
  for (auto e : g.player2_edges())
    if (g.successors(e.src).size() > 1) out.push_back(e);
  return out;
}

/// Calls visit(indices) for all k-subsets of {0..m-1} in lexicographic order
/// until visit returns true; returns whether it did.
template <typename Visit>
bool for_each_combination(std::size_t m, std::size_t k, Visit&& visit) {
  if (k > m) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

inline bool subset_wins(const Arena& a, const PriorityMap& p,
                        const std::vector<Edge>& cands,
                        const std::vector<std::size_t>& idx, StateIndex s) {
  FairTargets fair(a.size());
  for (auto i : idx) fair[cands[i].src].push_back(cands[i].dst);
  for (auto& l : fair) std::sort(l.begin(), l.end());
  return wins_from(a, p, fair, s);
}

}  // namespace detail

/// Smallest sufficient fair set with at most k edges, by cardinality-ascending
/// enumeration with lexicographic tie-break; none if no such set exists.
/// Edges out of single-successor player-2 states are never needed and are
/// skipped.
inline std::optional<EdgeSet> min_fair_subset_exhaustive(
    const GameGraph& g, const PriorityMap& p, StateIndex s, std::size_t k,
    std::size_t max_candidates = 16) {
  if (!g.deterministic())
    throw PreconditionError("exhaustive search needs a deterministic graph");
  if (s >= g.size()) throw PreconditionError("unknown state");
  detail::check_priorities(g, p);
  const auto cands = detail::branching_player2_edges(g);
  if (cands.size() > max_candidates)
    throw GuardError("exhaustive search: " + std::to_string(cands.size()) +
                     " candidate edges exceed the guard of " +
                     std::to_string(max_candidates));
  std::optional<EdgeSet> found;
  for (std::size_t size = 0; size <= std::min(k, cands.size()) && !found; ++size)
    detail::for_each_combination(cands.size(), size, [&](const auto& idx) {
      if (!detail::subset_wins(g.arena(), p, cands, idx, s)) return false;
      found.emplace();
      for (auto i : idx) found->insert(cands[i]);
      return true;
    });
  return found;
}

/// Whether some sufficient fair set has at most k edges, with a witness.
/// Sufficiency is monotone in the edge set, so only sets of exactly
/// min(k, #candidates) edges are tried, and a branch is cut as soon as the
/// chosen edges plus every edge still available lose. Candidates are taken
/// in descending order, which puts edges of late-sorting sources first.
inline std::optional<EdgeSet> sufficient_fair_subset_within(
    const GameGraph& g, const PriorityMap& p, StateIndex s, std::size_t k) {
  if (!g.deterministic())
    throw PreconditionError("subset search needs a deterministic graph");
  if (s >= g.size()) throw PreconditionError("unknown state");
  detail::check_priorities(g, p);
  auto cands = detail::branching_player2_edges(g);
  std::reverse(cands.begin(), cands.end());
  const std::size_t size = std::min(k, cands.size());
  const Arena& a = g.arena();
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> bound;
  auto search = [&](auto&& self, std::size_t start) -> bool {
    if (chosen.size() == size)
      return detail::subset_wins(a, p, cands, chosen, s);
    bound = chosen;
    for (std::size_t i = start; i < cands.size(); ++i) bound.push_back(i);
    if (!detail::subset_wins(a, p, cands, bound, s)) return false;
    for (std::size_t i = start; i + (size - chosen.size()) <= cands.size(); ++i) {
      chosen.push_back(i);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  EdgeSet found;
  for (auto i : chosen) found.insert(cands[i]);
  return found;
}

}  // namespace assumekit
