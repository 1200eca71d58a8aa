#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "assumekit/synthesis.hpp"

namespace assumekit {

/// Deterministic Moore machine: output depends on the state only.
struct MooreTransducer {
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<Letter> output;
  std::vector<std::map<Letter, std::size_t>> transition;
  std::vector<std::string> input_props;
  std::vector<std::string> output_props;

  std::size_t next(std::size_t q, const Letter& in) const {
    auto it = transition.at(q).find(in);
    if (it == transition[q].end())
      throw PreconditionError("transducer has no move on " + to_string(in));
    return it->second;
  }

  /// Transition function total over 2^input_props.
  bool total() const {
    const auto letters = all_letters(input_props);
    for (const auto& row : transition)
      for (const auto& l : letters)
        if (!row.count(l)) return false;
    return true;
  }
};

/// Deterministic Mealy machine: output depends on the state and the letter
/// just read.
struct MealyTransducer {
  struct Move {
    std::size_t next = 0;
    Letter output;
  };
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<std::map<Letter, Move>> transition;
  std::vector<std::string> input_props;
  std::vector<std::string> output_props;

  const Move& step(std::size_t q, const Letter& in) const {
    auto it = transition.at(q).find(in);
    if (it == transition[q].end())
      throw PreconditionError("transducer has no move on " + to_string(in));
    return it->second;
  }

  bool total() const {
    const auto letters = all_letters(input_props);
    for (const auto& row : transition)
      for (const auto& l : letters)
        if (!row.count(l)) return false;
    return true;
  }
};

/// Q = player-1 states, q_I = s_I, output(q) = label(alpha(q)),
/// next(q, l) = the successor of alpha(q) labeled l.
inline MooreTransducer strategy_to_moore(const SynthesisGame& sg,
                                         const MemorylessStrategy& alpha) {
  const GameGraph& g = sg.graph();
  if (alpha.player() != Player::P1)
    throw PreconditionError("a system transducer needs a player-1 strategy");
  alpha.validate(g);
  MooreTransducer t;
  t.input_props = sg.inputs();
  t.output_props = sg.outputs();
  std::vector<std::size_t> slot(g.size(), 0);
  for (StateIndex s = 0; s < g.size(); ++s) {
    if (g.owner(s) != Owner::P1) continue;
    if (!alpha.defined(s))
      throw PreconditionError("strategy undefined on player-1 state '" +
                              g.id(s) + "'");
    slot[s] = t.states.size();
    t.states.push_back(g.id(s));
  }
  t.output.resize(t.states.size());
  t.transition.resize(t.states.size());
  for (StateIndex s = 0; s < g.size(); ++s) {
    if (g.owner(s) != Owner::P1) continue;
    const StateIndex move = alpha[s];
    t.output[slot[s]] = sg.label(move);
    for (auto next : g.successors(move))
      t.transition[slot[s]][sg.label(next)] = slot[next];
  }
  t.initial = slot[sg.initial()];
  if (!t.total())
    throw PreconditionError("game is not complete for the input alphabet");
  return t;
}

/// The word a Moore system generates on an ultimately periodic input word.
inline LassoWord run_moore(const MooreTransducer& sys, const LassoWord& inputs) {
  if (inputs.cycle.empty()) throw PreconditionError("input cycle is empty");
  std::vector<Letter> letters;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  std::size_t q = sys.initial;
  for (std::size_t j = 0;; ++j) {
    if (j >= inputs.stem.size()) {
      auto key = std::make_pair((j - inputs.stem.size()) % inputs.cycle.size(), q);
      auto [it, fresh] = seen.emplace(key, j);
      if (!fresh) {
        LassoWord w;
        w.stem.assign(letters.begin(), letters.begin() + it->second);
        w.cycle.assign(letters.begin() + it->second, letters.end());
        return w;
      }
    }
    const Letter& in = inputs.at(j);
    Letter l = sys.output[q];
    l.insert(in.begin(), in.end());
    letters.push_back(std::move(l));
    q = sys.next(q, in);
  }
}

/// Closed-loop word of a Moore system against a Mealy environment that
/// reads the system's outputs and answers with inputs.
inline LassoWord compose(const MooreTransducer& sys, const MealyTransducer& env) {
  std::vector<Letter> letters;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  std::size_t q = sys.initial;
  std::size_t e = env.initial;
  for (std::size_t j = 0;; ++j) {
    auto [it, fresh] = seen.emplace(std::make_pair(q, e), j);
    if (!fresh) {
      LassoWord w;
      w.stem.assign(letters.begin(), letters.begin() + it->second);
      w.cycle.assign(letters.begin() + it->second, letters.end());
      return w;
    }
    const Letter& out = sys.output[q];
    const auto& move = env.step(e, out);
    Letter l = out;
    l.insert(move.output.begin(), move.output.end());
    letters.push_back(std::move(l));
    q = sys.next(q, move.output);
    e = move.next;
  }
}

}  // namespace assumekit
