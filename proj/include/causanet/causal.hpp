#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causanet/error.hpp"
#include "causanet/rng.hpp"

namespace causanet {

// ---------------------------------------------------------------------------
// Neuron diagrams: acyclic graphs of shaded/blank nodes with stimulatory and
// inhibitory edges. A non-start node fires when some stimulating predecessor
// is active and no inhibiting predecessor is; inhibition cancels stimulation.
// ---------------------------------------------------------------------------

struct NeuronDiagram {
  enum class EdgeKind { stimulatory, inhibitory };

  struct Node {
    std::string name;
    bool shaded = false;  // meaningful for start nodes only
    bool operator==(const Node&) const = default;
  };

  struct Edge {
    std::size_t source;
    std::size_t target;
    EdgeKind kind;
    bool operator==(const Edge&) const = default;
  };

  std::string name;
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::optional<std::size_t> node_index(std::string_view name) const;

  bool operator==(const NeuronDiagram&) const = default;
};

// Activation per node, indexed like diagram.nodes. Throws on cycles.
std::vector<bool> neuron_evaluate(const NeuronDiagram& diagram);

// ---------------------------------------------------------------------------
// Boolean causal models: either a {var, not, and, or} formula or a list of
// condition clusters evaluated as a disjunction of conjunctions of literals.
// ---------------------------------------------------------------------------

struct BoolExpr {
  enum class Op { variable, negation, conjunction, disjunction };
  Op op = Op::variable;
  std::size_t variable = 0;          // Op::variable
  std::vector<BoolExpr> children;    // negation: 1; and/or: >= 1

  static BoolExpr var(std::size_t v);
  static BoolExpr negate(BoolExpr e);
  static BoolExpr all_of(std::vector<BoolExpr> es);
  static BoolExpr any_of(std::vector<BoolExpr> es);
};

struct Literal {
  std::size_t variable;
  bool negated = false;
};

using Cluster = std::vector<Literal>;

struct BooleanCausalModel {
  std::vector<std::string> variables;
  std::optional<BoolExpr> formula;
  std::vector<Cluster> clusters;  // used when formula is absent
};

// Assignment is indexed by variable declaration order and must cover every
// variable.
bool bool_evaluate(const BooleanCausalModel& model,
                   std::span<const int> assignment);

// ---------------------------------------------------------------------------
// Quine-McCluskey minimization. Variable i maps to bit (n-1-i), so the first
// declared variable is the most significant bit of a minterm.
// ---------------------------------------------------------------------------

struct Implicant {
  std::uint32_t value = 0;
  std::uint32_t dont_care = 0;  // set bits are absent from the product term

  bool covers(std::uint32_t minterm) const {
    return ((minterm ^ value) & ~dont_care) == 0;
  }
  std::size_t literal_count(std::size_t num_vars) const;
  bool operator==(const Implicant&) const = default;
};

// Minimal sum-of-products equivalent to the on-set: prime implicants by
// iterated merging, essential primes extracted, the residue covered by
// exhaustive search. Fewest implicants win; ties break on fewest literals,
// then lexicographically on the rendered product terms. num_vars <= 16.
std::vector<Implicant> qm_minimize(std::size_t num_vars,
                                   std::vector<std::uint32_t> on_set);

// "A&!B&D" form; the empty product renders as "1".
std::string implicant_to_string(const Implicant& imp,
                                std::span<const std::string> names);

// " | "-joined products; the empty sum renders as "0".
std::string implicants_to_string(std::span<const Implicant> imps,
                                 std::span<const std::string> names);

// ---------------------------------------------------------------------------
// Probabilistic causal-chain graphs. Edge strengths are adverb distributions
// (Gaussians truncated to [0,1]); multiple sentences about one link stack as
// factors that fuse by precision weighting.
// ---------------------------------------------------------------------------

struct AdverbDistribution {
  std::string adverb;
  double mean = 0.5;     // in [0,1]
  double stddev = 0.1;   // > 0
  bool operator==(const AdverbDistribution&) const = default;
};

class ChainGraph {
 public:
  struct Edge {
    std::size_t source;
    std::size_t target;
    std::vector<AdverbDistribution> strengths;
    bool operator==(const Edge&) const = default;
  };

  explicit ChainGraph(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t add_node(std::string name);
  std::optional<std::size_t> node_index(std::string_view name) const;

  // Self-edges and edges closing a directed cycle are rejected. Repeated
  // (source, target) pairs accumulate distributions on the existing edge.
  void add_edge(std::string_view source, std::string_view target,
                AdverbDistribution strength);

  const Edge* find_edge(std::size_t source, std::size_t target) const;

  bool operator==(const ChainGraph&) const = default;

 private:
  bool reaches(std::size_t from, std::size_t to) const;

  std::string name_;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
};

// Precision-weighted product of Gaussian factors; the fused mean is clamped
// into [0,1].
AdverbDistribution fuse_adverbs(std::span<const AdverbDistribution> factors);

// One draw from the distribution truncated to [0,1] (rejection).
double sample_link(const AdverbDistribution& dist, RandomSource& rng);

enum class ChainMode { fused, sampled };

// Product of edge strengths along the path; each multi-adverb edge collapses
// to fuse_adverbs' mean (fused) or to one sample_link draw (sampled, needs
// rng).
double chain_probability(const ChainGraph& graph,
                         std::span<const std::string> path, ChainMode mode,
                         RandomSource* rng = nullptr);

// ---------------------------------------------------------------------------
// Fuzzy cognitive maps: signed weighted concept graphs with edge delays.
// Update rule: A_i(k+1) = clamp_[-1,1](A_i(k) + sum_j w_ji * A_j(k - d_ji)).
// ---------------------------------------------------------------------------

struct FuzzyCognitiveMap {
  struct Concept {
    std::string name;
    double initial = 0.0;
    bool operator==(const Concept&) const = default;
  };

  struct Edge {
    std::size_t source;
    std::size_t target;
    double weight = 0.0;  // in [-1,1]
    int delay = 0;        // time steps
    bool operator==(const Edge&) const = default;
  };

  std::string name;
  std::vector<Concept> concepts;
  std::vector<Edge> edges;

  std::optional<std::size_t> concept_index(std::string_view name) const;
  int max_delay() const;

  bool operator==(const FuzzyCognitiveMap&) const = default;
};

// Raw incoming sums sum_j w_ji * A_j(k - d_ji), the pre-clamp increments.
// history.back() is A(k); history must hold at least max_delay()+1 states.
std::vector<double> fcm_influence(const FuzzyCognitiveMap& map,
                                  std::span<const std::vector<double>> history);

// One update step; concepts with no incoming edges keep their activation.
std::vector<double> fcm_step(const FuzzyCognitiveMap& map,
                             std::span<const std::vector<double>> history);

struct FcmRun {
  std::vector<std::vector<double>> trajectory;  // length iterations + 1
  bool fixed_point = false;  // last two states within 1e-9 in max norm
};

// Iterates fcm_step from `initial`; states before step 0 are taken to equal
// the initial state when edge delays reach into the past.
FcmRun fcm_run(const FuzzyCognitiveMap& map, std::vector<double> initial,
               std::size_t iterations);

}  // namespace causanet
