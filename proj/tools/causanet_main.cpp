#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "causanet/analysis.hpp"
#include "causanet/dsl.hpp"
#include "causanet/puzzles.hpp"
#include "causanet/textfmt.hpp"

namespace {

using namespace causanet;

// Exit-code contract: 0 success, 1 expectation/assertion failure,
// 2 parse error, 3 reference error.
constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitParse = 2;
constexpr int kExitReference = 3;

struct ExitWith {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read '" << path << "'\n";
    throw ExitWith{kExitParse};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document load_document(const std::string& path) {
  ParseResult result = parse_document(read_file(path));
  if (!result.ok()) {
    for (const auto& d : result.diagnostics) {
      std::cerr << path << ":" << d.line << ":" << d.column << ": "
                << d.message << "\n";
    }
    throw ExitWith{kExitParse};
  }
  return std::move(result.document);
}

const NetDef& pick_net(const Document& doc, const std::string& name) {
  if (name.empty()) {
    if (doc.nets.empty()) {
      std::cerr << "document contains no net\n";
      throw ExitWith{kExitReference};
    }
    return doc.nets.front();
  }
  const NetDef* net = doc.find_net(name);
  if (!net) {
    std::cerr << "unknown net '" << name << "'\n";
    throw ExitWith{kExitReference};
  }
  return *net;
}

GatePolicy parse_policy(const std::string& name) {
  if (name == "centroid") return GatePolicy::centroid;
  if (name == "sampled") return GatePolicy::sampled;
  std::cerr << "unknown policy '" << name << "'\n";
  throw ExitWith{kExitReference};
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& file, const std::string& net_name,
                 double horizon, std::size_t runs, std::uint64_t seed,
                 const std::string& policy_name, std::size_t max_steps,
                 const std::string& trace_out) {
  Document doc = load_document(file);
  const NetDef& net = pick_net(doc, net_name);
  GatePolicy policy = parse_policy(policy_name);

  std::vector<SimTrace> traces;
  traces.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    RunConfig config{horizon, max_steps, seed + r, policy};
    traces.push_back(run(net, config));
    if (!trace_out.empty()) {
      std::string path = runs == 1
                             ? trace_out
                             : trace_out + "." + std::to_string(seed + r);
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write '" << path << "'\n";
        return kExitAssertion;
      }
      out << trace_to_text(traces.back());
    }
  }

  std::cout << "runs " << runs << " seed " << seed << " policy "
            << to_string(policy) << " horizon " << format_number(horizon)
            << "\n";
  for (const auto& t : net.transitions) {
    TraceStats stats = trace_stats(traces, net, t.name);
    char freq[16];
    std::snprintf(freq, sizeof(freq), "%.3f", stats.firing_frequency);
    std::cout << "trans " << t.name << " frequency " << freq << " firings "
              << stats.total_firings;
    if (stats.first_time_mean) {
      std::cout << " first_mean " << format_number(*stats.first_time_mean);
    }
    if (stats.gate_draws > 0) {
      std::cout << " gate_passes " << stats.gate_passes << "/"
                << stats.gate_draws;
    }
    std::cout << "\n";
  }
  std::map<Marking, std::size_t> finals;
  for (const auto& trace : traces) ++finals[trace.final_marking];
  for (const auto& [marking, count] : finals) {
    std::cout << "final " << marking.to_string() << " x" << count << "\n";
  }
  return kExitOk;
}

// --- step (interactive token game) ------------------------------------------

void print_state(const NetDef& net, const Marking& m) {
  std::cout << "marking " << m.to_string() << "\n";
  std::cout << "enabled";
  for (std::size_t t : enabled_transitions(net, m)) {
    std::cout << " " << net.transitions[t].name;
  }
  std::cout << "\n";
}

int cmd_step(const std::string& file, const std::string& net_name,
             std::uint64_t seed) {
  Document doc = load_document(file);
  const NetDef& net = pick_net(doc, net_name);
  RandomSource rng(seed);

  std::vector<Marking> stack = {net.initial_marking()};
  std::cout << "net " << net.name << "\n";
  print_state(net, stack.back());

  std::string line;
  while (std::getline(std::cin, line)) {
    std::istringstream words(line);
    std::string verb;
    words >> verb;
    if (verb.empty()) continue;
    if (verb == "quit") break;
    if (verb == "undo") {
      if (stack.size() == 1) {
        std::cout << "nothing to undo\n";
      } else {
        stack.pop_back();
      }
      print_state(net, stack.back());
      continue;
    }
    if (verb == "fire") {
      std::string name;
      words >> name;
      auto t = net.transition_index(name);
      if (!t) {
        std::cout << "unknown transition " << name << "\n";
        continue;
      }
      try {
        Marking next = fire(net, stack.back(), *t);
        stack.push_back(std::move(next));
        std::cout << "fired " << name << "\n";
      } catch (const DisabledTransition& e) {
        std::cout << e.what() << "\n";
      }
      print_state(net, stack.back());
      continue;
    }
    if (verb == "auto") {
      auto enabled = enabled_transitions(net, stack.back());
      if (enabled.empty()) {
        std::cout << "deadlock\n";
        print_state(net, stack.back());
        continue;
      }
      std::vector<double> weights;
      for (std::size_t t : enabled) {
        weights.push_back(net.transitions[t].timing.conflict_weight);
      }
      std::size_t pick = resolve_conflict(enabled, weights, rng);
      stack.push_back(fire(net, stack.back(), pick));
      std::cout << "fired " << net.transitions[pick].name << "\n";
      print_state(net, stack.back());
      continue;
    }
    std::cout << "commands: fire <t>, auto, undo, quit\n";
  }
  return kExitOk;
}

// --- reach -------------------------------------------------------------------

int cmd_reach(const std::string& file, const std::string& net_name,
              std::size_t max_nodes, int max_tokens, int bound,
              const std::string& dot_out) {
  Document doc = load_document(file);
  const NetDef& net = pick_net(doc, net_name);
  ReachabilityGraph g = reachability_graph(net, max_nodes, max_tokens);
  std::cout << "nodes " << g.nodes.size() << "\n";
  std::cout << "edges " << g.edges.size() << "\n";
  std::cout << "truncated " << (g.truncated ? "yes" : "no") << "\n";
  for (const auto& m : detect_deadlocks(g)) {
    std::cout << "deadlock " << m.to_string() << "\n";
  }
  if (bound >= 0) {
    if (g.truncated) {
      std::cout << "k-bounded unknown (truncated)\n";
    } else {
      std::cout << "k-bounded " << (is_k_bounded(g, bound) ? "yes" : "no")
                << "\n";
    }
  }
  if (!dot_out.empty()) {
    std::ofstream out(dot_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << dot_out << "'\n";
      return kExitAssertion;
    }
    out << export_dot(net, g);
  }
  return kExitOk;
}

// --- puzzle -------------------------------------------------------------------

int cmd_puzzle(const std::string& name, bool all, bool list) {
  if (list) {
    for (const auto& n : scenario_names()) std::cout << n << "\n";
    return kExitOk;
  }
  std::vector<CheckResult> results;
  if (all) {
    results = check_all_scenarios();
  } else {
    if (name.empty()) {
      std::cerr << "puzzle needs a scenario name or --all\n";
      return kExitReference;
    }
    try {
      results = check_scenario(build_scenario(name));
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kExitReference;
    }
  }
  bool failed = false;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.scenario << ": "
              << r.description;
    if (!r.detail.empty()) std::cout << " — " << r.detail;
    std::cout << "\n";
    if (!r.passed) failed = true;
  }
  return failed ? kExitAssertion : kExitOk;
}

// --- minimize ------------------------------------------------------------------

int cmd_minimize(const std::string& file) {
  std::string text = read_file(file);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> names;
  std::vector<std::uint32_t> minterms;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream words(line);
    std::vector<std::string> toks;
    std::string tok;
    while (words >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (names.empty()) {
      names = toks;
      continue;
    }
    if (toks.size() != 1 || toks[0].size() != names.size()) {
      std::cerr << file << ":" << line_no
                << ": expected one bit per header variable\n";
      return kExitParse;
    }
    std::uint32_t m = 0;
    for (char c : toks[0]) {
      if (c != '0' && c != '1') {
        std::cerr << file << ":" << line_no << ": bad bit '" << c << "'\n";
        return kExitParse;
      }
      m = (m << 1) | (c == '1' ? 1u : 0u);
    }
    minterms.push_back(m);
  }
  if (names.empty()) {
    std::cerr << file << ": missing header line with variable names\n";
    return kExitParse;
  }
  try {
    auto implicants = qm_minimize(names.size(), std::move(minterms));
    std::cout << implicants_to_string(implicants, names) << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}

// --- chain -----------------------------------------------------------------------

int cmd_chain(const std::string& file, const std::string& graph_name,
              const std::string& path_arg, const std::string& mode_name,
              std::uint64_t seed) {
  Document doc = load_document(file);
  const ChainGraph* graph = nullptr;
  if (graph_name.empty()) {
    if (doc.chains.empty()) {
      std::cerr << "document contains no chain graph\n";
      return kExitReference;
    }
    graph = &doc.chains.front();
  } else {
    graph = doc.find_chain(graph_name);
    if (!graph) {
      std::cerr << "unknown chain '" << graph_name << "'\n";
      return kExitReference;
    }
  }
  std::vector<std::string> path;
  std::size_t pos = 0;
  while (pos <= path_arg.size()) {
    std::size_t comma = path_arg.find(',', pos);
    path.push_back(path_arg.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  ChainMode mode;
  if (mode_name == "fused") {
    mode = ChainMode::fused;
  } else if (mode_name == "sampled") {
    mode = ChainMode::sampled;
  } else {
    std::cerr << "unknown mode '" << mode_name << "'\n";
    return kExitReference;
  }
  try {
    RandomSource rng(seed);
    double p = chain_probability(*graph, path, mode, &rng);
    std::cout << format_number(p) << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitReference;
  }
  return kExitOk;
}

// --- fcm -------------------------------------------------------------------------

int cmd_fcm(const std::string& file, const std::string& map_name,
            std::size_t steps) {
  Document doc = load_document(file);
  const FuzzyCognitiveMap* map = nullptr;
  if (map_name.empty()) {
    if (doc.fcms.empty()) {
      std::cerr << "document contains no fcm\n";
      return kExitReference;
    }
    map = &doc.fcms.front();
  } else {
    map = doc.find_fcm(map_name);
    if (!map) {
      std::cerr << "unknown fcm '" << map_name << "'\n";
      return kExitReference;
    }
  }
  std::vector<double> initial;
  for (const auto& c : map->concepts) initial.push_back(c.initial);
  FcmRun result = fcm_run(*map, initial, steps);
  for (const auto& state : result.trajectory) {
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << format_number(state[i]);
    }
    std::cout << "\n";
  }
  std::cout << "fixed-point " << (result.fixed_point ? "yes" : "no") << "\n";
  return kExitOk;
}

// --- export-dot --------------------------------------------------------------------

int cmd_export_dot(const std::string& file, const std::string& item,
                   bool reach, std::size_t max_nodes, int max_tokens) {
  Document doc = load_document(file);
  if (const NetDef* net = doc.find_net(item)) {
    if (reach) {
      std::cout << export_dot(*net,
                              reachability_graph(*net, max_nodes, max_tokens));
    } else {
      std::cout << export_dot(*net);
    }
    return kExitOk;
  }
  if (reach) {
    std::cerr << "--reach needs a net, '" << item << "' is not one\n";
    return kExitReference;
  }
  if (const ChainGraph* chain = doc.find_chain(item)) {
    std::cout << export_dot(*chain);
    return kExitOk;
  }
  if (const NeuronDiagram* neuron = doc.find_neuron(item)) {
    std::cout << export_dot(*neuron);
    return kExitOk;
  }
  std::cerr << "unknown item '" << item << "'\n";
  return kExitReference;
}

// --- validate ----------------------------------------------------------------------

int cmd_validate(const std::string& file) {
  Document doc = load_document(file);
  std::size_t total = 0;
  for (const auto& net : doc.nets) {
    ValidationReport report = validate(net);
    for (const auto& v : report.violations) {
      std::cout << net.name << ": " << v.subject << ": " << v.detail << "\n";
      ++total;
    }
  }
  if (total == 0) {
    std::cout << "ok\n";
    return kExitOk;
  }
  return kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petri-net and causal-formalism toolkit"};
  app.require_subcommand(1);

  std::string file, net_name, policy = "centroid", trace_out;
  double horizon = 1e9;
  std::size_t runs = 1, max_steps = 10000, fcm_steps = 20;
  std::uint64_t seed = 0;
  std::size_t max_nodes = 10000;
  int max_tokens = 1000, bound = -1;
  std::string puzzle_name, graph_name, path_arg, mode = "fused", map_name;
  std::string item, dot_out;
  bool all = false, list = false, reach_flag = false;

  auto* simulate = app.add_subcommand("simulate", "run a net and summarize");
  simulate->add_option("file", file)->required();
  simulate->add_option("--net", net_name);
  simulate->add_option("--horizon", horizon);
  simulate->add_option("--runs", runs);
  simulate->add_option("--seed", seed);
  simulate->add_option("--policy", policy);
  simulate->add_option("--max-steps", max_steps);
  simulate->add_option("--trace-out", trace_out);

  auto* step = app.add_subcommand("step", "interactive token game");
  step->add_option("file", file)->required();
  step->add_option("--net", net_name);
  step->add_option("--seed", seed);

  auto* reach = app.add_subcommand("reach", "bounded reachability analysis");
  reach->add_option("file", file)->required();
  reach->add_option("--net", net_name);
  reach->add_option("--max-nodes", max_nodes);
  reach->add_option("--max-tokens", max_tokens);
  reach->add_option("--bound", bound);
  reach->add_option("--dot", dot_out);

  auto* puzzle = app.add_subcommand("puzzle", "run built-in scenarios");
  puzzle->add_option("name", puzzle_name);
  puzzle->add_flag("--all", all);
  puzzle->add_flag("--list", list);

  auto* minimize = app.add_subcommand("minimize", "Quine-McCluskey on a table");
  minimize->add_option("file", file)->required();

  auto* chain = app.add_subcommand("chain", "chain probability along a path");
  chain->add_option("file", file)->required();
  chain->add_option("--graph", graph_name);
  chain->add_option("--path", path_arg)->required();
  chain->add_option("--mode", mode);
  chain->add_option("--seed", seed);

  auto* fcm = app.add_subcommand("fcm", "iterate a fuzzy cognitive map");
  fcm->add_option("file", file)->required();
  fcm->add_option("--map", map_name);
  fcm->add_option("--steps", fcm_steps);

  auto* export_dot_cmd = app.add_subcommand("export-dot", "emit DOT");
  export_dot_cmd->add_option("file", file)->required();
  export_dot_cmd->add_option("--item", item)->required();
  export_dot_cmd->add_flag("--reach", reach_flag);
  export_dot_cmd->add_option("--max-nodes", max_nodes);
  export_dot_cmd->add_option("--max-tokens", max_tokens);

  auto* validate_cmd = app.add_subcommand("validate", "check net invariants");
  validate_cmd->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(file, net_name, horizon, runs, seed, policy,
                          max_steps, trace_out);
    }
    if (step->parsed()) return cmd_step(file, net_name, seed);
    if (reach->parsed()) {
      return cmd_reach(file, net_name, max_nodes, max_tokens, bound, dot_out);
    }
    if (puzzle->parsed()) return cmd_puzzle(puzzle_name, all, list);
    if (minimize->parsed()) return cmd_minimize(file);
    if (chain->parsed()) {
      return cmd_chain(file, graph_name, path_arg, mode, seed);
    }
    if (fcm->parsed()) return cmd_fcm(file, map_name, fcm_steps);
    if (export_dot_cmd->parsed()) {
      return cmd_export_dot(file, item, reach_flag, max_nodes, max_tokens);
    }
    if (validate_cmd->parsed()) return cmd_validate(file);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitOk;
}
