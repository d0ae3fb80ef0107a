#include "causanet/analysis.hpp"

#include <algorithm>
#include <deque>

namespace causanet {

std::size_t ReachabilityGraph::out_degree(std::size_t node) const {
  std::size_t n = 0;
  for (const auto& e : edges) {
    if (e.from == node) ++n;
  }
  return n;
}

ReachabilityGraph reachability_graph(const NetDef& net, std::size_t max_nodes,
                                     int max_tokens_per_place) {
  if (max_nodes < 1 || max_tokens_per_place < 1) {
    throw Error("reachability bounds must be >= 1");
  }
  ReachabilityGraph g;
  std::map<Marking, std::size_t> index;

  auto admit = [&](const Marking& m) -> std::optional<std::size_t> {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    for (int c : m.counts) {
      if (c > max_tokens_per_place) {
        g.truncated = true;
        return std::nullopt;
      }
    }
    if (g.nodes.size() >= max_nodes) {
      g.truncated = true;
      return std::nullopt;
    }
    std::size_t id = g.nodes.size();
    g.nodes.push_back(m);
    g.expanded.push_back(0);
    index.emplace(m, id);
    return id;
  };

  Marking root = net.initial_marking();
  if (!admit(root)) {
    // Root itself exceeds the token cap; report the single-node graph.
    g.nodes.push_back(root);
    g.expanded.push_back(0);
    return g;
  }

  std::deque<std::size_t> queue = {0};
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    Marking m = g.nodes[node];
    bool complete = true;
    for (std::size_t t : enabled_transitions(net, m)) {
      Marking next = fire(net, m, t);
      bool fresh = !index.contains(next);
      auto target = admit(next);
      if (!target) {
        complete = false;
        continue;
      }
      g.edges.push_back({node, t, *target});
      if (fresh) queue.push_back(*target);
    }
    g.expanded[node] = complete ? 1 : 0;
  }
  return g;
}

std::vector<Marking> detect_deadlocks(const ReachabilityGraph& g) {
  std::vector<std::size_t> degree(g.nodes.size(), 0);
  for (const auto& e : g.edges) ++degree[e.from];
  std::vector<Marking> dead;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.expanded[i] && degree[i] == 0) dead.push_back(g.nodes[i]);
  }
  return dead;
}

bool is_k_bounded(const ReachabilityGraph& g, int k) {
  if (g.truncated) {
    throw Error("is_k_bounded: graph was truncated; boundedness undecided");
  }
  if (k < 0) return g.nodes.empty();
  for (const auto& m : g.nodes) {
    for (int c : m.counts) {
      if (c > k) return false;
    }
  }
  return true;
}

TraceStats trace_stats(std::span<const SimTrace> traces, const NetDef& net,
                       std::string_view query) {
  TraceStats stats;
  stats.traces = traces.size();

  auto transition = net.transition_index(query);
  auto place = net.place_index(query);
  if (!transition && !place) {
    throw Error("trace_stats: unknown transition or place '" +
                std::string(query) + "'");
  }
  stats.transition_query = transition.has_value();

  double first_sum = 0.0;
  for (const auto& trace : traces) {
    if (trace.place_names != net.places) {
      throw Error("trace_stats: trace does not belong to net '" + net.name +
                  "'");
    }
    if (transition) {
      std::optional<double> first;
      std::size_t firings = 0;
      for (const auto& event : trace.events) {
        if (event.transition == *transition) {
          ++firings;
          if (!first) first = event.time;
        }
        for (const auto& d : event.draws) {
          if (d.kind == DrawRecord::Kind::gate && d.transition == *transition) {
            ++stats.gate_draws;
            if (d.pass) ++stats.gate_passes;
          }
        }
      }
      for (const auto& d : trace.final_draws) {
        if (d.kind == DrawRecord::Kind::gate && d.transition == *transition) {
          ++stats.gate_draws;
          if (d.pass) ++stats.gate_passes;
        }
      }
      stats.total_firings += firings;
      if (first) {
        ++stats.traces_with_firing;
        first_sum += *first;
        stats.first_time_min =
            stats.first_time_min ? std::min(*stats.first_time_min, *first)
                                 : *first;
        stats.first_time_max =
            stats.first_time_max ? std::max(*stats.first_time_max, *first)
                                 : *first;
      }
    } else {
      ++stats.final_count_histogram[trace.final_marking[*place]];
    }
    ++stats.final_marking_histogram[trace.final_marking];
  }
  if (stats.traces > 0) {
    stats.firing_frequency =
        static_cast<double>(stats.traces_with_firing) / stats.traces;
  }
  if (stats.traces_with_firing > 0) {
    stats.first_time_mean = first_sum / stats.traces_with_firing;
  }
  return stats;
}

}  // namespace causanet
