#include "causanet/causal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace causanet {

std::optional<std::size_t> NeuronDiagram::node_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<bool> neuron_evaluate(const NeuronDiagram& diagram) {
  const std::size_t n = diagram.nodes.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& e : diagram.edges) {
    if (e.source >= n || e.target >= n) {
      throw Error("neuron edge references an undeclared node");
    }
    ++indegree[e.target];
  }

  // Kahn topological order; anything left over sits on a cycle.
  std::vector<std::size_t> remaining = indegree;
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (remaining[i] == 0) ready.push_back(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t node = ready.front();
    ready.pop_front();
    order.push_back(node);
    for (const auto& e : diagram.edges) {
      if (e.source == node && --remaining[e.target] == 0) {
        ready.push_back(e.target);
      }
    }
  }
  if (order.size() != n) {
    throw Error("neuron diagram '" + diagram.name + "' contains a cycle");
  }

  std::vector<bool> active(n, false);
  for (std::size_t node : order) {
    if (indegree[node] == 0) {
      active[node] = diagram.nodes[node].shaded;
      continue;
    }
    bool stimulated = false;
    bool inhibited = false;
    for (const auto& e : diagram.edges) {
      if (e.target != node || !active[e.source]) continue;
      if (e.kind == NeuronDiagram::EdgeKind::stimulatory) stimulated = true;
      else inhibited = true;
    }
    active[node] = stimulated && !inhibited;
  }
  return active;
}

BoolExpr BoolExpr::var(std::size_t v) {
  BoolExpr e;
  e.op = Op::variable;
  e.variable = v;
  return e;
}

BoolExpr BoolExpr::negate(BoolExpr inner) {
  BoolExpr e;
  e.op = Op::negation;
  e.children.push_back(std::move(inner));
  return e;
}

BoolExpr BoolExpr::all_of(std::vector<BoolExpr> es) {
  BoolExpr e;
  e.op = Op::conjunction;
  e.children = std::move(es);
  return e;
}

BoolExpr BoolExpr::any_of(std::vector<BoolExpr> es) {
  BoolExpr e;
  e.op = Op::disjunction;
  e.children = std::move(es);
  return e;
}

namespace {

bool eval_expr(const BoolExpr& e, std::span<const int> assignment) {
  switch (e.op) {
    case BoolExpr::Op::variable:
      if (e.variable >= assignment.size()) {
        throw Error("formula references variable #" +
                    std::to_string(e.variable) + " outside the assignment");
      }
      return assignment[e.variable] != 0;
    case BoolExpr::Op::negation:
      return !eval_expr(e.children.at(0), assignment);
    case BoolExpr::Op::conjunction:
      for (const auto& c : e.children) {
        if (!eval_expr(c, assignment)) return false;
      }
      return true;
    case BoolExpr::Op::disjunction:
      for (const auto& c : e.children) {
        if (eval_expr(c, assignment)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

bool bool_evaluate(const BooleanCausalModel& model,
                   std::span<const int> assignment) {
  if (assignment.size() < model.variables.size()) {
    throw Error("assignment covers " + std::to_string(assignment.size()) +
                " of " + std::to_string(model.variables.size()) +
                " variables");
  }
  if (model.formula) return eval_expr(*model.formula, assignment);
  if (model.clusters.empty()) {
    throw Error("boolean causal model has neither formula nor clusters");
  }
  for (const auto& cluster : model.clusters) {
    if (cluster.empty()) throw Error("empty cluster in boolean causal model");
    bool all = true;
    for (const auto& lit : cluster) {
      if (lit.variable >= assignment.size()) {
        throw Error("cluster references variable #" +
                    std::to_string(lit.variable) +
                    " outside the assignment");
      }
      bool v = assignment[lit.variable] != 0;
      if (lit.negated ? v : !v) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::size_t ChainGraph::add_node(std::string name) {
  if (auto existing = node_index(name)) return *existing;
  nodes_.push_back(std::move(name));
  return nodes_.size() - 1;
}

std::optional<std::size_t> ChainGraph::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == name) return i;
  }
  return std::nullopt;
}

bool ChainGraph::reaches(std::size_t from, std::size_t to) const {
  std::deque<std::size_t> queue = {from};
  std::vector<bool> seen(nodes_.size(), false);
  seen[from] = true;
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    if (node == to) return true;
    for (const auto& e : edges_) {
      if (e.source == node && !seen[e.target]) {
        seen[e.target] = true;
        queue.push_back(e.target);
      }
    }
  }
  return false;
}

void ChainGraph::add_edge(std::string_view source, std::string_view target,
                          AdverbDistribution strength) {
  if (!(strength.mean >= 0.0 && strength.mean <= 1.0)) {
    throw Error("adverb mean must lie in [0,1]");
  }
  if (strength.stddev <= 0.0) throw Error("adverb stddev must be positive");
  if (source == target) {
    throw Error("self-edge " + std::string(source) + " -> " +
                std::string(target) + " rejected: nothing causes itself");
  }
  std::size_t s = add_node(std::string(source));
  std::size_t t = add_node(std::string(target));
  for (auto& e : edges_) {
    if (e.source == s && e.target == t) {
      e.strengths.push_back(std::move(strength));
      return;
    }
  }
  if (reaches(t, s)) {
    throw Error("edge " + std::string(source) + " -> " + std::string(target) +
                " rejected: it closes a directed cycle");
  }
  edges_.push_back({s, t, {std::move(strength)}});
}

const ChainGraph::Edge* ChainGraph::find_edge(std::size_t source,
                                              std::size_t target) const {
  for (const auto& e : edges_) {
    if (e.source == source && e.target == target) return &e;
  }
  return nullptr;
}

AdverbDistribution fuse_adverbs(std::span<const AdverbDistribution> factors) {
  if (factors.empty()) throw Error("fuse_adverbs: empty factor list");
  if (factors.size() == 1) return factors[0];
  double precision = 0.0;
  double weighted_mean = 0.0;
  std::string adverb;
  for (const auto& f : factors) {
    if (f.stddev <= 0.0) throw Error("fuse_adverbs: non-positive stddev");
    double p = 1.0 / (f.stddev * f.stddev);
    precision += p;
    weighted_mean += p * f.mean;
    if (!adverb.empty()) adverb += "+";
    adverb += f.adverb;
  }
  AdverbDistribution fused;
  fused.adverb = adverb;
  fused.mean = std::clamp(weighted_mean / precision, 0.0, 1.0);
  fused.stddev = std::sqrt(1.0 / precision);
  return fused;
}

double sample_link(const AdverbDistribution& dist, RandomSource& rng) {
  if (dist.stddev <= 0.0) throw Error("sample_link: non-positive stddev");
  for (;;) {
    double x = rng.normal(dist.mean, dist.stddev);
    if (x >= 0.0 && x <= 1.0) return x;
  }
}

double chain_probability(const ChainGraph& graph,
                         std::span<const std::string> path, ChainMode mode,
                         RandomSource* rng) {
  if (path.size() < 2) {
    throw Error("chain_probability: path needs at least two nodes");
  }
  if (mode == ChainMode::sampled && rng == nullptr) {
    throw Error("chain_probability: sampled mode needs a random source");
  }
  double product = 1.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto s = graph.node_index(path[i]);
    auto t = graph.node_index(path[i + 1]);
    const ChainGraph::Edge* edge =
        (s && t) ? graph.find_edge(*s, *t) : nullptr;
    if (!edge) {
      throw Error("chain_probability: no edge " + path[i] + " -> " +
                  path[i + 1]);
    }
    if (mode == ChainMode::fused) {
      product *= fuse_adverbs(edge->strengths).mean;
    } else {
      product *= sample_link(fuse_adverbs(edge->strengths), *rng);
    }
  }
  return product;
}

std::optional<std::size_t> FuzzyCognitiveMap::concept_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (concepts[i].name == name) return i;
  }
  return std::nullopt;
}

int FuzzyCognitiveMap::max_delay() const {
  int d = 0;
  for (const auto& e : edges) d = std::max(d, e.delay);
  return d;
}

std::vector<double> fcm_influence(
    const FuzzyCognitiveMap& map,
    std::span<const std::vector<double>> history) {
  const std::size_t n = map.concepts.size();
  const int depth = static_cast<int>(history.size());
  if (depth < map.max_delay() + 1) {
    throw Error("fcm history holds " + std::to_string(depth) +
                " states but max delay is " + std::to_string(map.max_delay()));
  }
  for (const auto& state : history) {
    if (state.size() != n) throw Error("fcm history state has wrong size");
  }
  std::vector<double> influence(n, 0.0);
  for (const auto& e : map.edges) {
    if (e.source >= n || e.target >= n) {
      throw Error("fcm edge references an undeclared concept");
    }
    const auto& state = history[depth - 1 - e.delay];
    influence[e.target] += e.weight * state[e.source];
  }
  return influence;
}

std::vector<double> fcm_step(const FuzzyCognitiveMap& map,
                             std::span<const std::vector<double>> history) {
  std::vector<double> influence = fcm_influence(map, history);
  const auto& current = history.back();
  std::vector<double> next(map.concepts.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = std::clamp(current[i] + influence[i], -1.0, 1.0);
  }
  return next;
}

FcmRun fcm_run(const FuzzyCognitiveMap& map, std::vector<double> initial,
               std::size_t iterations) {
  if (initial.size() != map.concepts.size()) {
    throw Error("fcm initial state has wrong size");
  }
  FcmRun result;
  // Pre-history: delayed edges read the initial state before step 0.
  std::vector<std::vector<double>> history(
      static_cast<std::size_t>(map.max_delay()) + 1, initial);
  result.trajectory.push_back(initial);
  for (std::size_t k = 0; k < iterations; ++k) {
    std::vector<double> next = fcm_step(map, history);
    history.erase(history.begin());
    history.push_back(next);
    result.trajectory.push_back(std::move(next));
  }
  if (result.trajectory.size() >= 2) {
    const auto& a = result.trajectory[result.trajectory.size() - 2];
    const auto& b = result.trajectory.back();
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    result.fixed_point = diff < 1e-9;
  }
  return result;
}

}  // namespace causanet
