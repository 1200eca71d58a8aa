#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "assumekit/graph.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/pipeline.hpp"
#include "assumekit/synthesis.hpp"

namespace assumekit {

/// Everything a game file can hold. `synthesis` is present iff the file
/// declares "inputs" or "outputs"; `forbidden`/`fair` iff it is an
/// assumption-automaton file.
struct GameFile {
  GameGraph graph;
  std::optional<Objective> objective;
  std::optional<SynthesisGame> synthesis;
  std::optional<EdgeSet> forbidden;
  std::optional<EdgeSet> fair;

  /// Objective as a priority map (see parity_of).
  PriorityMap priorities() const {
    if (!objective)
      throw ValidationError("file has neither an objective nor priorities",
                            "objective");
    return parity_of(graph, *objective);
  }

  AssumptionAutomaton automaton() const {
    if (!synthesis)
      throw ValidationError("an automaton needs a synthesis game", "inputs");
    return AssumptionAutomaton(*synthesis, forbidden.value_or(EdgeSet{}),
                               fair.value_or(EdgeSet{}));
  }
};

namespace detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline std::pair<int, int> line_column(const std::string& text,
                                       std::size_t offset) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline const Json& member(const Json& obj, const char* key,
                          const std::string& path) {
  if (!obj.contains(key))
    throw ParseError(std::string("missing field '") + key + "'", 0, 0, path);
  return obj.at(key);
}

inline std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError("expected a string", 0, 0, path);
  return v.get<std::string>();
}

inline std::vector<std::string> string_list(const Json& v,
                                            const std::string& path) {
  if (!v.is_array()) throw ParseError("expected an array", 0, 0, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_string(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<IdEdge> edge_list(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError("expected an array", 0, 0, path);
  std::vector<IdEdge> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2)
      throw ParseError("expected a [source, target] pair", 0, 0, p);
    out.emplace_back(as_string(v[i][0], p), as_string(v[i][1], p));
  }
  return out;
}

inline Rational parse_rational(const std::string& s, const std::string& path) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    const long long num = std::stoll(s.substr(0, slash), &used);
    if (used != s.substr(0, slash).size()) throw std::invalid_argument(s);
    long long den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(s.substr(slash + 1), &used);
      if (used != s.substr(slash + 1).size()) throw std::invalid_argument(s);
    }
    if (den <= 0) throw std::invalid_argument(s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw ParseError("bad rational '" + s + "', expected \"num/den\"", 0, 0,
                     path);
  }
}

inline EdgeSet edge_set(const GameGraph& g, const std::vector<IdEdge>& list,
                        const std::string& path) {
  EdgeSet out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& [u, v] = list[i];
    auto su = g.find(u);
    auto sv = g.find(v);
    if (!su || !sv || !g.has_edge(*su, *sv))
      throw ValidationError("(" + u + "," + v + ") is not an edge",
                            path + "[" + std::to_string(i) + "]");
    out.insert({*su, *sv});
  }
  return out;
}

inline StateSet state_list(const GameGraph& g, const Json& v,
                           const std::string& path) {
  StateSet out(g.size());
  const auto ids = string_list(v, path);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto s = g.find(ids[i]);
    if (!s)
      throw ValidationError("unknown state '" + ids[i] + "'",
                            path + "[" + std::to_string(i) + "]");
    out.insert(*s);
  }
  return out;
}

inline std::optional<Objective> read_objective(const GameGraph& g,
                                               const Json& doc) {
  if (!doc.contains("objective")) {
    if (g.has_priorities() && g.size() > 0) return Objective::parity(g.priorities());
    return std::nullopt;
  }
  const Json& o = doc.at("objective");
  if (!o.is_object()) throw ParseError("expected an object", 0, 0, "objective");
  const std::string name = as_string(member(o, "kind", "objective"), "objective.kind");
  const auto kind = objective_kind(name);
  if (!kind)
    throw ValidationError("unknown objective kind '" + name +
                              "' (reach, safe, buchi, cobuchi, parity)",
                          "objective.kind");
  if (*kind != ObjectiveKind::Parity)
    return Objective{*kind,
                     state_list(g, member(o, "target", "objective"),
                                "objective.target"),
                     {}};
  if (!o.contains("priorities")) {
    if (!g.has_priorities())
      throw ValidationError(
          "parity objective needs a priority on every state or a "
          "'priorities' map",
          "objective");
    return Objective::parity(g.priorities());
  }
  const Json& pm = o.at("priorities");
  if (!pm.is_object())
    throw ParseError("expected an object", 0, 0, "objective.priorities");
  PriorityMap p(g.size(), -1);
  for (auto it = pm.begin(); it != pm.end(); ++it) {
    const std::string path = "objective.priorities." + it.key();
    auto s = g.find(it.key());
    if (!s) throw ValidationError("unknown state '" + it.key() + "'", path);
    if (!it.value().is_number_integer() || it.value().get<long long>() < 0)
      throw ParseError("expected a natural number", 0, 0, path);
    p[*s] = it.value().get<int>();
  }
  for (StateIndex s = 0; s < g.size(); ++s)
    if (p[s] < 0)
      throw ValidationError("no priority for '" + g.id(s) + "'",
                            "objective.priorities");
  return Objective::parity(std::move(p));
}

}  // namespace detail

/// Parses the JSON game-file format (see README). Syntax errors carry line
/// and column; structural errors carry the field path.
inline GameFile parse_game(const std::string& text) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    // drop nlohmann's "[json.exception...] parse error at line L, column C: "
    std::string what = e.what();
    const auto colon = what.find(": ", what.find("column"));
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError("invalid JSON: " + what, line, column);
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", 1, 1);

  const Json& st = detail::member(doc, "states", "");
  if (!st.is_array()) throw ParseError("expected an array", 0, 0, "states");
  std::vector<StateRecord> records;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::string path = "states[" + std::to_string(i) + "]";
    const Json& s = st[i];
    if (!s.is_object()) throw ParseError("expected an object", 0, 0, path);
    for (auto it = s.begin(); it != s.end(); ++it)
      if (it.key() != "id" && it.key() != "owner" && it.key() != "priority" &&
          it.key() != "label")
        throw ParseError("unknown field '" + it.key() + "'", 0, 0, path);
    StateRecord r;
    r.id = detail::as_string(detail::member(s, "id", path), path + ".id");
    const std::string owner =
        detail::as_string(detail::member(s, "owner", path), path + ".owner");
    if (owner == "P1")
      r.owner = Owner::P1;
    else if (owner == "P2")
      r.owner = Owner::P2;
    else if (owner == "PROB")
      r.owner = Owner::Prob;
    else
      throw ValidationError("owner must be P1, P2 or PROB", path + ".owner");
    if (s.contains("priority")) {
      const Json& pr = s.at("priority");
      if (!pr.is_number_integer() || pr.get<long long>() < 0)
        throw ParseError("expected a natural number", 0, 0, path + ".priority");
      r.priority = pr.get<int>();
    }
    if (s.contains("label")) {
      const auto props = detail::string_list(s.at("label"), path + ".label");
      r.label = Letter(props.begin(), props.end());
    }
    records.push_back(std::move(r));
  }
  const auto edges =
      detail::edge_list(detail::member(doc, "edges", ""), "edges");
  Distribution dist;
  if (doc.contains("dist")) {
    const Json& d = doc.at("dist");
    if (!d.is_object()) throw ParseError("expected an object", 0, 0, "dist");
    for (auto it = d.begin(); it != d.end(); ++it) {
      const std::string path = "dist." + it.key();
      if (!it.value().is_object())
        throw ParseError("expected an object", 0, 0, path);
      for (auto w = it.value().begin(); w != it.value().end(); ++w)
        dist[it.key()][w.key()] = detail::parse_rational(
            detail::as_string(w.value(), path + "." + w.key()),
            path + "." + w.key());
    }
  }
  std::optional<std::string> initial;
  if (doc.contains("initial"))
    initial = detail::as_string(doc.at("initial"), "initial");

  GameFile out;
  out.graph = GameGraph(std::move(records), edges, dist, initial);
  out.objective = detail::read_objective(out.graph, doc);
  if (doc.contains("inputs") || doc.contains("outputs")) {
    const auto in = doc.contains("inputs")
                        ? detail::string_list(doc.at("inputs"), "inputs")
                        : std::vector<std::string>{};
    const auto outp = doc.contains("outputs")
                          ? detail::string_list(doc.at("outputs"), "outputs")
                          : std::vector<std::string>{};
    if (!out.objective)
      throw ValidationError("synthesis game needs an objective", "objective");
    out.synthesis = SynthesisGame(out.graph, in, outp, *out.objective);
  }
  if (doc.contains("forbidden"))
    out.forbidden = detail::edge_set(
        out.graph, detail::edge_list(doc.at("forbidden"), "forbidden"),
        "forbidden");
  if (doc.contains("fair"))
    out.fair = detail::edge_set(out.graph,
                                detail::edge_list(doc.at("fair"), "fair"), "fair");
  if ((out.forbidden || out.fair) && out.synthesis) out.automaton();
  return out;
}

namespace detail {

inline OrderedJson edges_json(const GameGraph& g, const EdgeSet& es) {
  OrderedJson arr = OrderedJson::array();
  for (auto e : es) arr.push_back({g.id(e.src), g.id(e.dst)});
  return arr;
}

inline OrderedJson ids_json(const GameGraph& g, const StateSet& s) {
  OrderedJson arr = OrderedJson::array();
  for (auto u : s.members()) arr.push_back(g.id(u));
  return arr;
}

inline OrderedJson game_json(const GameGraph& g,
                             const std::optional<Objective>& obj) {
  OrderedJson doc;
  OrderedJson st = OrderedJson::array();
  for (const auto& r : g.records()) {
    OrderedJson s;
    s["id"] = r.id;
    s["owner"] = to_string(r.owner);
    if (r.priority) s["priority"] = *r.priority;
    if (r.label) s["label"] = std::vector<std::string>(r.label->begin(), r.label->end());
    st.push_back(std::move(s));
  }
  doc["states"] = std::move(st);
  OrderedJson es = OrderedJson::array();
  for (auto e : g.edges()) es.push_back({g.id(e.src), g.id(e.dst)});
  doc["edges"] = std::move(es);
  OrderedJson dist = OrderedJson::object();
  for (StateIndex s = 0; s < g.size(); ++s) {
    if (g.distribution(s).empty()) continue;
    OrderedJson w;
    for (const auto& [t, r] : g.distribution(s)) w[g.id(t)] = GameGraph::to_string(r);
    dist[g.id(s)] = std::move(w);
  }
  if (!dist.empty()) doc["dist"] = std::move(dist);
  if (g.initial()) doc["initial"] = g.id(*g.initial());
  if (obj) {
    OrderedJson o;
    o["kind"] = to_string(obj->kind);
    if (obj->kind == ObjectiveKind::Parity) {
      bool from_states = g.has_priorities() && g.priorities() == obj->priority;
      if (!from_states) {
        OrderedJson pm = OrderedJson::object();
        for (StateIndex s = 0; s < g.size(); ++s) pm[g.id(s)] = obj->priority[s];
        o["priorities"] = std::move(pm);
      }
    } else {
      o["target"] = ids_json(g, obj->target);
    }
    doc["objective"] = std::move(o);
  }
  return doc;
}

}  // namespace detail

/// Serializes a game file; parse_game(print_game(f)) reproduces f.
inline std::string print_game(const GameFile& f) {
  auto doc = detail::game_json(f.graph, f.objective);
  if (f.synthesis) {
    doc["inputs"] = f.synthesis->inputs();
    doc["outputs"] = f.synthesis->outputs();
  }
  if (f.forbidden) doc["forbidden"] = detail::edges_json(f.graph, *f.forbidden);
  if (f.fair) doc["fair"] = detail::edges_json(f.graph, *f.fair);
  return doc.dump(2) + "\n";
}

inline std::string print_game(const GameGraph& g,
                              const std::optional<Objective>& obj = std::nullopt) {
  GameFile f;
  f.graph = g;
  f.objective = obj;
  return print_game(f);
}

inline std::string print_automaton(const AssumptionAutomaton& a) {
  GameFile f;
  f.graph = a.base().graph();
  f.objective = a.base().objective();
  f.synthesis = a.base();
  f.forbidden = a.forbidden();
  f.fair = a.fair();
  return print_game(f);
}

/// Graphviz rendering: player-1 states are boxes, player-2 diamonds,
/// probabilistic circles; forbidden edges dashed, fair edges bold.
inline std::string to_dot(const GameGraph& g, const EdgeSet& forbidden = {},
                          const EdgeSet& fair = {}) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "digraph game {\n";
  for (StateIndex s = 0; s < g.size(); ++s) {
    const auto& r = g.record(s);
    std::string label = r.id;
    if (r.priority) label += "\\np=" + std::to_string(*r.priority);
    if (r.label) label += "\\n" + to_string(*r.label);
    const char* shape = r.owner == Owner::P1   ? "box"
                        : r.owner == Owner::P2 ? "diamond"
                                               : "circle";
    out << "  " << quote(r.id) << " [shape=" << shape << ", label=\"" << label
        << "\"";
    if (g.initial() && *g.initial() == s) out << ", peripheries=2";
    out << "];\n";
  }
  for (auto e : g.edges()) {
    out << "  " << quote(g.id(e.src)) << " -> " << quote(g.id(e.dst));
    std::vector<std::string> attrs;
    if (forbidden.count(e)) attrs.push_back("style=dashed");
    if (fair.count(e)) attrs.push_back("style=bold");
    for (const auto& [t, w] : g.distribution(e.src))
      if (t == e.dst) attrs.push_back("label=\"" + GameGraph::to_string(w) + "\"");
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i)
        out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

/// Word literal grammar (whitespace ignored):
///   word    := letters? '|' letters
///   letters := letter (',' letter)*
///   letter  := '{' (prop (',' prop)*)? '}'
///   prop    := [A-Za-z0-9_.~'-]+
/// The part after '|' is the cycle and must be nonempty.
inline LassoWord parse_word(const std::string& text) {
  std::string s;
  std::vector<int> col;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s += text[i];
      col.push_back(static_cast<int>(i) + 1);
    }
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    const int c = pos < col.size() ? col[pos]
                                   : static_cast<int>(text.size()) + 1;
    return ParseError(what, 1, c, "word");
  };
  auto prop_char = [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
           ch == '.' || ch == '~' || ch == '\'' || ch == '-';
  };
  auto letters = [&](std::vector<Letter>& out) {
    if (pos >= s.size() || s[pos] != '{') return;
    while (true) {
      if (pos >= s.size() || s[pos] != '{') throw fail("expected '{'");
      ++pos;
      Letter l;
      if (pos < s.size() && s[pos] != '}') {
        while (true) {
          std::string prop;
          while (pos < s.size() && prop_char(s[pos])) prop += s[pos++];
          if (prop.empty()) throw fail("expected a proposition name");
          l.insert(prop);
          if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
          }
          break;
        }
      }
      if (pos >= s.size() || s[pos] != '}') throw fail("expected '}'");
      ++pos;
      out.push_back(std::move(l));
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      return;
    }
  };
  LassoWord w;
  letters(w.stem);
  if (pos >= s.size() || s[pos] != '|') throw fail("expected '|'");
  ++pos;
  letters(w.cycle);
  if (w.cycle.empty()) throw fail("cycle must contain at least one letter");
  if (pos != s.size()) throw fail("unexpected trailing text");
  return w;
}

inline std::string format_word(const LassoWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.stem.size(); ++i)
    out += (i ? "," : "") + to_string(w.stem[i]);
  out += "|";
  for (std::size_t i = 0; i < w.cycle.size(); ++i)
    out += (i ? "," : "") + to_string(w.cycle[i]);
  return out;
}

}  // namespace assumekit
