#include "causanet/dsl.hpp"
#include "causanet/textfmt.hpp"

namespace causanet {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const NetDef& net) {
  std::string out = "digraph " + quote(net.name.empty() ? "net" : net.name) +
                    " {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < net.places.size(); ++i) {
    int tokens = i < net.initial_tokens.size() ? net.initial_tokens[i] : 0;
    out += "  " + quote(net.places[i]) + " [shape=circle, label=" +
           quote(net.places[i] + "\\n" + std::to_string(tokens)) + "];\n";
  }
  for (const auto& t : net.transitions) {
    out += "  " + quote(t.name) + " [shape=box];\n";
  }
  for (const auto& t : net.transitions) {
    for (const auto& arc : t.inputs) {
      out += "  " + quote(net.places[arc.place]) + " -> " + quote(t.name);
      if (arc.weight > 1) {
        out += " [label=" + quote(std::to_string(arc.weight)) + "]";
      }
      out += ";\n";
    }
    for (const auto& arc : t.outputs) {
      out += "  " + quote(t.name) + " -> " + quote(net.places[arc.place]);
      if (arc.weight > 1) {
        out += " [label=" + quote(std::to_string(arc.weight)) + "]";
      }
      out += ";\n";
    }
  }
  out += "}\n";
  return out;
}

std::string export_dot(const NetDef& net, const ReachabilityGraph& graph) {
  std::string out = "digraph " +
                    quote((net.name.empty() ? "net" : net.name) + "_reach") +
                    " {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    out += "  m" + std::to_string(i) + " [shape=ellipse, label=" +
           quote(graph.nodes[i].to_string()) + "];\n";
  }
  for (const auto& e : graph.edges) {
    out += "  m" + std::to_string(e.from) + " -> m" + std::to_string(e.to) +
           " [label=" + quote(net.transitions[e.transition].name) + "];\n";
  }
  out += "}\n";
  return out;
}

std::string export_dot(const ChainGraph& graph) {
  std::string out = "digraph " +
                    quote(graph.name().empty() ? "chain" : graph.name()) +
                    " {\n  rankdir=LR;\n";
  for (const auto& n : graph.nodes()) {
    out += "  " + quote(n) + " [shape=ellipse];\n";
  }
  for (const auto& e : graph.edges()) {
    AdverbDistribution fused = fuse_adverbs(e.strengths);
    std::string label = fused.adverb + " m=" + format_number(fused.mean) +
                        " s=" + format_number(fused.stddev);
    out += "  " + quote(graph.nodes()[e.source]) + " -> " +
           quote(graph.nodes()[e.target]) + " [label=" + quote(label) +
           "];\n";
  }
  out += "}\n";
  return out;
}

std::string export_dot(const NeuronDiagram& diagram) {
  std::string out = "digraph " +
                    quote(diagram.name.empty() ? "neuron" : diagram.name) +
                    " {\n  rankdir=LR;\n";
  std::vector<bool> has_incoming(diagram.nodes.size(), false);
  for (const auto& e : diagram.edges) has_incoming[e.target] = true;
  for (std::size_t i = 0; i < diagram.nodes.size(); ++i) {
    const auto& n = diagram.nodes[i];
    out += "  " + quote(n.name) + " [shape=circle";
    if (!has_incoming[i] && n.shaded) {
      out += ", style=filled, fillcolor=gray80";
    }
    out += "];\n";
  }
  for (const auto& e : diagram.edges) {
    out += "  " + quote(diagram.nodes[e.source].name) + " -> " +
           quote(diagram.nodes[e.target].name);
    if (e.kind == NeuronDiagram::EdgeKind::inhibitory) {
      out += " [arrowhead=odot]";
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace causanet
