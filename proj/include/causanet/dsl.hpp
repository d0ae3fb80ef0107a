#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "causanet/analysis.hpp"
#include "causanet/causal.hpp"
#include "causanet/net.hpp"

namespace causanet {

// A parsed .causanet document: nets, fuzzy labels, chain graphs, cognitive
// maps and neuron diagrams, with declaration order preserved for canonical
// serialization. Identifiers are unique per item kind.
struct Document {
  enum class ItemKind { net, label, chain, fcm, neuron };

  struct ItemRef {
    ItemKind kind;
    std::size_t index;
    bool operator==(const ItemRef&) const = default;
  };

  std::vector<NetDef> nets;
  std::vector<FuzzyLabel> labels;
  std::vector<ChainGraph> chains;
  std::vector<FuzzyCognitiveMap> fcms;
  std::vector<NeuronDiagram> neurons;
  std::vector<ItemRef> order;

  const NetDef* find_net(std::string_view name) const;
  const FuzzyLabel* find_label(std::string_view name) const;
  const ChainGraph* find_chain(std::string_view name) const;
  const FuzzyCognitiveMap* find_fcm(std::string_view name) const;
  const NeuronDiagram* find_neuron(std::string_view name) const;

  bool operator==(const Document&) const = default;
};

struct Diagnostic {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;
};

struct ParseResult {
  Document document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Line-oriented grammar, '#' starts a comment:
//
//   net NAME
//     place NAME [tokens=N]
//     trans NAME [in P[:W],...] [out P[:W],...]
//           [delay=imm|det(x)|exp(r)|unif(a,b)] [fuzzy=LABEL] [weight=w]
//   end
//   label NAME tri(a,b,c) | trap(a,b,c,d) | crisp(v)
//   chain NAME
//     edge X -> Y adverb "text" mean=m std=s
//   end
//   fcm NAME
//     concept NAME [init=v]
//     edge X -> Y w=v [delay=d]
//   end
//   neuron NAME
//     node NAME [shaded]
//     stim X -> Y
//     inhib X -> Y
//   end
//
// Every rejection carries a line/column diagnostic; parsing continues past
// recoverable errors so one pass reports as much as possible.
ParseResult parse_document(std::string_view text);

// Canonical text: declaration order preserved, one item per line, two-space
// block indentation, defaults omitted (tokens=0, delay=imm, arc weight 1,
// conflict weight 1, fcm delay 0). parse(serialize(d)) is structurally d.
std::string serialize_document(const Document& doc);

std::string serialize_net(const NetDef& net);

// DOT exporters: places as circles annotated with their initial token count,
// transitions as boxes, arc weights > 1 as edge labels; reachability nodes
// labelled with their marking; neuron inhibitory edges end in an odot
// arrowhead and shaded start nodes are filled. Output ordering is
// deterministic.
std::string export_dot(const NetDef& net);
std::string export_dot(const NetDef& net, const ReachabilityGraph& graph);
std::string export_dot(const ChainGraph& graph);
std::string export_dot(const NeuronDiagram& diagram);

}  // namespace causanet
