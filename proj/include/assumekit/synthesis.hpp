#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/strategy.hpp"

namespace assumekit {

/// All 2^|props| letters, ordered by the bitmask over `props`.
inline std::vector<Letter> all_letters(const std::vector<std::string>& props) {
  std::vector<Letter> out;
  const std::size_t n = props.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Letter l;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) l.insert(props[i]);
    out.push_back(std::move(l));
  }
  return out;
}

inline Letter restrict_letter(const Letter& l,
                              const std::vector<std::string>& props) {
  Letter out;
  for (const auto& p : props)
    if (l.count(p)) out.insert(p);
  return out;
}

inline std::string to_string(const Letter& l) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : l) {
    if (!first) out += ",";
    out += p;
    first = false;
  }
  return out + "}";
}

/// Labeled bipartite game between the system (player 1, picks outputs) and
/// the environment (player 2, picks inputs). Player-1 states carry input
/// letters, player-2 states output letters; the successor with a given
/// label is unique and always exists.
class SynthesisGame {
 public:
  SynthesisGame() = default;

  SynthesisGame(GameGraph graph, std::vector<std::string> inputs,
                std::vector<std::string> outputs, Objective objective)
      : graph_(std::move(graph)),
        inputs_(std::move(inputs)),
        outputs_(std::move(outputs)),
        objective_(std::move(objective)) {
    validate();
    index_successors();
  }

  const GameGraph& graph() const { return graph_; }
  StateIndex initial() const { return *graph_.initial(); }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const Objective& objective() const { return objective_; }

  const Letter& label(StateIndex s) const {
    static const Letter empty;
    const auto& l = graph_.label(s);
    return l ? *l : empty;
  }

  /// The unique successor of s whose label is `l`.
  std::optional<StateIndex> successor(StateIndex s, const Letter& l) const {
    auto it = by_label_[s].find(l);
    if (it == by_label_[s].end()) return std::nullopt;
    return it->second;
  }

  bool is_proposition(const std::string& p) const {
    return std::find(inputs_.begin(), inputs_.end(), p) != inputs_.end() ||
           std::find(outputs_.begin(), outputs_.end(), p) != outputs_.end();
  }

  bool operator==(const SynthesisGame& o) const {
    return graph_ == o.graph_ && inputs_ == o.inputs_ &&
           outputs_ == o.outputs_ && objective_ == o.objective_;
  }

 private:
  void validate() const {
    const GameGraph& g = graph_;
    if (!g.deterministic())
      throw ValidationError("synthesis game must be deterministic", "states");
    if (!g.initial()) throw ValidationError("missing initial state", "initial");
    if (g.owner(*g.initial()) != Owner::P1)
      throw ValidationError("initial state must be a player-1 state",
                            "initial");
    std::set<std::string> seen;
    for (const auto& p : inputs_)
      if (!seen.insert(p).second)
        throw ValidationError("duplicate proposition '" + p + "'", "inputs");
    for (const auto& p : outputs_)
      if (!seen.insert(p).second)
        throw ValidationError("proposition '" + p +
                                  "' is both input and output or repeated",
                              "outputs");
    check_objective(g, objective_);

    for (StateIndex s = 0; s < g.size(); ++s) {
      const std::string field = "states." + g.id(s);
      const bool p1 = g.owner(s) == Owner::P1;
      const auto& allowed = p1 ? inputs_ : outputs_;
      for (const auto& p : label(s))
        if (std::find(allowed.begin(), allowed.end(), p) == allowed.end())
          throw ValidationError(std::string("label proposition '") + p +
                                    "' is not an " + (p1 ? "input" : "output"),
                                field);
      std::set<Letter> labels;
      for (auto t : g.successors(s)) {
        if (g.owner(t) == g.owner(s))
          throw ValidationError("edge to '" + g.id(t) +
                                    "' breaks player alternation",
                                field);
        if (!labels.insert(label(t)).second)
          throw ValidationError("two successors share label " +
                                    to_string(label(t)),
                                field);
      }
      // Labels are subsets of the successor's alphabet, so distinct labels
      // covering all 2^k letters means exactly 2^k successors.
      const auto& succ_props = p1 ? outputs_ : inputs_;
      if (labels.size() != (std::size_t{1} << succ_props.size()))
        throw ValidationError("successors do not cover every letter of 2^" +
                                  std::string(p1 ? "O" : "I"),
                              field);
    }
  }

  void index_successors() {
    by_label_.assign(graph_.size(), {});
    for (StateIndex s = 0; s < graph_.size(); ++s)
      for (auto t : graph_.successors(s)) by_label_[s].emplace(label(t), t);
  }

  GameGraph graph_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  Objective objective_;
  std::vector<std::map<Letter, StateIndex>> by_label_;
};

/// word(pi)_i = label(pi_{2i+1}) u label(pi_{2i+2}); the label of the
/// initial state is ignored. Requires the play to start at the initial
/// state.
inline LassoWord word_of_play(const SynthesisGame& sg, const LassoPlay& play) {
  const GameGraph& g = sg.graph();
  validate_play(g, play);
  if (play.at(0) != sg.initial())
    throw PreconditionError("play does not start at the initial state");
  for (std::size_t i = 0; i < play.length(); ++i)
    if (g.owner(play.at(i)) == g.owner(play.at(i + 1)))
      throw PreconditionError("play breaks alternation at step " +
                              std::to_string(i));

  const std::size_t m = play.stem.size();
  const std::size_t c = play.cycle.size();
  const std::size_t first_periodic = m / 2;
  const std::size_t period = c / std::gcd(c, std::size_t{2});
  auto letter = [&](std::size_t i) {
    Letter l = sg.label(play.at(2 * i + 1));
    const Letter& r = sg.label(play.at(2 * i + 2));
    l.insert(r.begin(), r.end());
    return l;
  };
  LassoWord w;
  for (std::size_t i = 0; i < first_periodic; ++i) w.stem.push_back(letter(i));
  for (std::size_t i = 0; i < period; ++i)
    w.cycle.push_back(letter(first_periodic + i));
  return w;
}

/// The unique play from the initial state spelling `w`. The result's cycle
/// starts at a player-1 state, and the simulation stops at the first
/// repeated (cycle position, state) pair, so it takes at most
/// |stem| + |cycle| * |S| letters.
inline LassoPlay play_of_word(const SynthesisGame& sg, const LassoWord& w) {
  if (w.cycle.empty()) throw PreconditionError("word cycle is empty");
  for (std::size_t i = 0; i < w.length(); ++i)
    for (const auto& p : w.at(i))
      if (!sg.is_proposition(p))
        throw PreconditionError("letter mentions unknown proposition '" + p +
                                "'");
  std::vector<StateIndex> positions{sg.initial()};
  std::map<std::pair<std::size_t, StateIndex>, std::size_t> seen;
  for (std::size_t j = 0;; ++j) {
    const StateIndex q = positions.back();
    if (j >= w.stem.size()) {
      const auto key = std::make_pair((j - w.stem.size()) % w.cycle.size(), q);
      auto [it, fresh] = seen.emplace(key, j);
      if (!fresh) {
        const std::size_t start = 2 * it->second;
        LassoPlay play;
        play.stem.assign(positions.begin(), positions.begin() + start);
        play.cycle.assign(positions.begin() + start, positions.end() - 1);
        return play;
      }
    }
    const Letter& a = w.at(j);
    const StateIndex t = *sg.successor(q, restrict_letter(a, sg.outputs()));
    const StateIndex next = *sg.successor(t, restrict_letter(a, sg.inputs()));
    positions.push_back(t);
    positions.push_back(next);
  }
}

}  // namespace assumekit
