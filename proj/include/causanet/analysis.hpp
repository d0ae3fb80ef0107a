#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "causanet/net.hpp"
#include "causanet/sim.hpp"

namespace causanet {

// Breadth-first closure of the firing relation, bounded by a node budget and
// a per-place token cap so source transitions terminate. Nodes are stored in
// discovery order; nodes[0] is the initial marking.
struct ReachabilityGraph {
  struct Edge {
    std::size_t from;
    std::size_t transition;
    std::size_t to;
  };

  std::vector<Marking> nodes;
  std::vector<Edge> edges;
  // expanded[i]: every enabled firing at nodes[i] was explored and its target
  // admitted. Nodes left in the frontier or with capped successors are not
  // expanded and say nothing about deadlock.
  std::vector<std::uint8_t> expanded;
  bool truncated = false;

  std::size_t out_degree(std::size_t node) const;
};

ReachabilityGraph reachability_graph(const NetDef& net, std::size_t max_nodes,
                                     int max_tokens_per_place);

// Fully expanded markings with no outgoing edges.
std::vector<Marking> detect_deadlocks(const ReachabilityGraph& g);

// True iff every place count in every reachable marking is <= k. Only
// meaningful on complete graphs; throws when the exploration was truncated.
bool is_k_bounded(const ReachabilityGraph& g, int k);

struct TraceStats {
  std::size_t traces = 0;
  bool transition_query = false;
  // transition queries
  std::size_t traces_with_firing = 0;
  std::size_t total_firings = 0;
  double firing_frequency = 0.0;  // traces_with_firing / traces
  std::optional<double> first_time_min;
  std::optional<double> first_time_mean;
  std::optional<double> first_time_max;
  std::size_t gate_draws = 0;
  std::size_t gate_passes = 0;
  // place queries
  std::map<int, std::size_t> final_count_histogram;
  // both
  std::map<Marking, std::size_t> final_marking_histogram;
};

// Aggregates a batch of traces from the same net. `query` names either a
// transition (firing frequency, first-firing-time summary, gate draws) or a
// place (final-count histogram).
TraceStats trace_stats(std::span<const SimTrace> traces, const NetDef& net,
                       std::string_view query);

}  // namespace causanet
