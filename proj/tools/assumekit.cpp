// assumekit command-line front end. Every command prints one JSON report on
// stdout and exits 0, or prints a diagnostic on stderr and exits nonzero:
//   2 parse / validation / usage, 3 internal invariant, 4 unsatisfiable
//   specification, 5 no sufficient fair assumption.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <assumekit/assumekit.hpp>

using namespace assumekit;
using Json = nlohmann::ordered_json;

namespace {

struct ExitError : std::runtime_error {
  int code;
  ExitError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitError(2, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  out << "sha256:";
  for (unsigned i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

Json id_list(const GameGraph& g, const StateSet& s) { return ids(g, s); }

Json edge_list(const GameGraph& g, const EdgeSet& es) {
  Json out = Json::array();
  for (const auto& [u, v] : ids(g, es)) out.push_back({u, v});
  return out;
}

Json strategy_json(const GameGraph& g, const MemorylessStrategy& st) {
  Json out = Json::object();
  for (StateIndex s = 0; s < g.size(); ++s)
    if (st.defined(s)) out[g.id(s)] = g.id(st[s]);
  return out;
}

StateIndex state_arg(const GameGraph& g, const std::string& id) {
  if (id.empty()) {
    if (!g.initial()) throw ExitError(2, "no --state given and no initial state");
    return *g.initial();
  }
  auto s = g.find(id);
  if (!s) throw ExitError(2, "unknown state '" + id + "'");
  return *s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

// "b->a,c->d"
EdgeSet parse_edges(const GameGraph& g, const std::string& text) {
  std::vector<IdEdge> list;
  for (const auto& item : split(text, ',')) {
    const auto arrow = item.find("->");
    if (arrow == std::string::npos)
      throw ExitError(2, "edge '" + item + "' is not of the form src->dst");
    list.emplace_back(item.substr(0, arrow), item.substr(arrow + 2));
  }
  for (const auto& [u, v] : list) {
    auto su = g.find(u), sv = g.find(v);
    if (!su || !sv || !g.has_edge(*su, *sv))
      throw ExitError(2, "unknown edge " + u + "->" + v);
  }
  return edges(g, list);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ASSUMEKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ExitError(2, "ASSUMEKIT_SEED is not a number");
    }
  }
  return 1;
}

struct Report {
  std::string command;
  std::string digest;
  std::optional<std::uint64_t> seed;
  Json result;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Environment assumptions for unrealizable synthesis games"};
  app.require_subcommand(1);

  std::string file, objective_kind_name, target, mode = "combined", state_id,
                                                 fair_edges, word, dimacs,
                                                 output;
  bool dot = false, random = false;
  RandomGameParams params;
  std::optional<std::uint64_t> seed;

  auto* solve_cmd = app.add_subcommand("solve", "solve a game (sure or almost-sure)");
  solve_cmd->add_option("file", file, "game file")->required();
  solve_cmd->add_option("--objective", objective_kind_name,
                        "override: reach|safe|buchi|cobuchi|parity");
  solve_cmd->add_option("--target", target, "comma-separated state ids");
  solve_cmd->add_flag("--dot", dot, "print the graph as DOT instead");

  auto* assume_cmd = app.add_subcommand("assume", "compute an environment assumption");
  assume_cmd->add_option("file", file, "game file")->required();
  assume_cmd->add_option("--mode", mode, "safety|fair|combined")
      ->check(CLI::IsMember({"safety", "fair", "combined"}));
  assume_cmd->add_option("--state", state_id, "state (default: initial)");
  assume_cmd->add_option("-o,--output", output, "write the automaton file");
  assume_cmd->add_flag("--dot", dot, "print the automaton as DOT instead");

  auto* check_cmd = app.add_subcommand("check", "is a fair-edge set sufficient?");
  check_cmd->add_option("file", file, "game file")->required();
  check_cmd->add_option("--fair-edges", fair_edges, "src->dst,...")->required();
  check_cmd->add_option("--state", state_id, "state (default: initial)");

  auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark game");
  auto* three = gen_cmd->add_option("--three-sat", dimacs, "DIMACS CNF file");
  auto* rnd = gen_cmd->add_flag("--random", random, "random game");
  three->excludes(rnd);
  gen_cmd->add_option("--states", params.num_states);
  gen_cmd->add_option("--density", params.edge_density);
  gen_cmd->add_option("--priorities", params.num_priorities);
  gen_cmd->add_option("--prob-fraction", params.prob_fraction);
  gen_cmd->add_option("--seed", seed, "default: $ASSUMEKIT_SEED or 1");
  gen_cmd->add_option("-o,--output", output, "write the game file");
  gen_cmd->add_flag("--dot", dot, "print the game as DOT instead");

  auto* member_cmd = app.add_subcommand("member", "lasso-word membership");
  member_cmd->add_option("file", file, "automaton file")->required();
  member_cmd->add_option("--word", word, "stem|cycle, e.g. {}|{req},{}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report report;
  for (int i = 1; i < argc; ++i) report.command += (i > 1 ? " " : "") + std::string(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  std::string text_out;  // DOT, when requested

  try {
    if (*solve_cmd) {
      const std::string text = read_file(file);
      report.digest = sha256(text);
      GameFile f = parse_game(text);
      if (!objective_kind_name.empty()) {
        auto kind = objective_kind(objective_kind_name);
        if (!kind) throw ExitError(2, "unknown objective '" + objective_kind_name + "'");
        if (*kind == ObjectiveKind::Parity)
          f.objective = Objective::parity(f.graph.priorities());
        else
          f.objective = Objective{*kind, states(f.graph, split(target, ',')), {}};
      }
      if (!f.objective) throw ExitError(2, "no objective: give --objective");
      const GameGraph& g = f.graph;
      if (dot) {
        text_out = to_dot(g);
      } else if (g.deterministic()) {
        const SolveResult r = solve(g, *f.objective);
        report.result = {{"kind", "sure"},
                         {"win1", id_list(g, r.win1)},
                         {"win2", id_list(g, r.win2)},
                         {"strat1", strategy_json(g, r.strat1)},
                         {"strat2", strategy_json(g, r.strat2)}};
      } else {
        const AlmostSureResult r = almost_sure_parity(g, f.priorities());
        report.result = {{"kind", "almost-sure"},
                         {"as", id_list(g, r.win)},
                         {"strat1", strategy_json(g, r.strategy)}};
      }
    } else if (*assume_cmd) {
      const std::string text = read_file(file);
      report.digest = sha256(text);
      const GameFile f = parse_game(text);
      const GameGraph& g = f.graph;
      if (mode == "safety") {
        const auto a = compute_safety_assumption(g, f.priorities());
        report.result = {{"mode", mode},
                         {"edges", edge_list(g, a.edges)},
                         {"safe_region", id_list(g, a.safe_region)}};
        if (dot) text_out = to_dot(g, a.edges);
      } else if (mode == "fair") {
        const StateIndex s = state_arg(g, state_id);
        const FairSearch r = locally_minimal_fair(g, f.priorities(), s);
        if (!r.assumption) throw ExitError(5, to_string(r.diagnostic));
        report.result = {{"mode", mode},
                         {"state", g.id(s)},
                         {"edges", edge_list(g, r.assumption->edges)},
                         {"winning_from", id_list(g, r.assumption->winning_from)}};
        if (dot) text_out = to_dot(g, {}, r.assumption->edges);
      } else {
        if (!f.synthesis) throw ExitError(2, "combined mode needs a synthesis game (inputs/outputs)");
        const PipelineResult r = combined_assumption(*f.synthesis);
        if (r.status == PipelineStatus::Unsat) throw ExitError(4, r.diagnostic);
        if (r.status == PipelineStatus::NoFairAssumption) throw ExitError(5, r.diagnostic);
        const std::string automaton = print_automaton(r.automaton);
        report.result = {{"mode", mode},
                         {"forbidden", edge_list(g, r.safety.edges)},
                         {"fair", edge_list(g, r.fairness.edges)},
                         {"empty", is_empty(r.automaton)},
                         {"system_strategy", strategy_json(g, r.system)},
                         {"automaton", Json::parse(automaton)}};
        if (dot) text_out = to_dot(g, r.safety.edges, r.fairness.edges);
        if (!output.empty()) {
          std::ofstream out(output, std::ios::binary);
          if (!(out << automaton)) throw ExitError(2, "cannot write '" + output + "'");
        }
      }
    } else if (*check_cmd) {
      const std::string text = read_file(file);
      report.digest = sha256(text);
      const GameFile f = parse_game(text);
      const GameGraph& g = f.graph;
      const EdgeSet fair = parse_edges(g, fair_edges);
      const StateIndex s = state_arg(g, state_id);
      const FairWin w = assume_fair_win(g, f.priorities(), fair);
      report.result = {{"state", g.id(s)},
                       {"fair", edge_list(g, fair)},
                       {"sufficient", w.win.contains(s)},
                       {"winning_from", id_list(g, w.win)}};
    } else if (*gen_cmd) {
      GameFile f;
      if (!dimacs.empty()) {
        const std::string text = read_file(dimacs);
        report.digest = sha256(text);
        const ThreeSatGame t = gen_3sat_game(parse_dimacs(text));
        f.graph = t.graph;
        f.objective = t.objective;
        report.result = {{"k", t.k}, {"initial", t.graph.id(t.initial)}};
      } else if (random) {
        report.seed = seed ? *seed : default_seed();
        std::ostringstream desc;
        desc << params.num_states << ' ' << params.edge_density << ' '
             << params.num_priorities << ' ' << params.prob_fraction;
        report.digest = sha256(desc.str());
        f.graph = random_game(params, *report.seed);
        f.objective = Objective::parity(f.graph.priorities());
        report.result = Json::object();
      } else {
        throw ExitError(2, "gen needs --three-sat FILE or --random");
      }
      report.result["states"] = f.graph.size();
      report.result["edges"] = f.graph.num_edges();
      const std::string game = print_game(f);
      if (dot) text_out = to_dot(f.graph);
      if (!output.empty()) {
        std::ofstream out(output, std::ios::binary);
        if (!(out << game)) throw ExitError(2, "cannot write '" + output + "'");
      } else {
        report.result["game"] = Json::parse(game);
      }
    } else if (*member_cmd) {
      const std::string text = read_file(file);
      report.digest = sha256(text);
      const GameFile f = parse_game(text);
      const AssumptionAutomaton a = f.automaton();
      const LassoWord w = parse_word(word);
      report.result = {{"word", format_word(w)}, {"accepted", lasso_member(a, w)}};
    }
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }

  if (dot) {
    std::cout << text_out;
    return 0;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  Json out;
  out["command"] = report.command;
  out["input_digest"] = report.digest;
  out["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  out["result"] = std::move(report.result);
  out["timing_ms"] = std::round(ms * 1000.0) / 1000.0;
  std::cout << out.dump(2) << "\n";
  return 0;
}
