#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causanet/error.hpp"
#include "causanet/timing.hpp"

namespace causanet {

// Token counts indexed by place declaration order.
struct Marking {
  std::vector<int> counts;

  Marking() = default;
  explicit Marking(std::vector<int> c) : counts(std::move(c)) {}

  std::size_t size() const { return counts.size(); }
  int operator[](std::size_t i) const { return counts[i]; }
  int& operator[](std::size_t i) { return counts[i]; }

  // Paper-style tuple form: "(2,2,0,0,0)".
  std::string to_string() const;

  bool operator==(const Marking&) const = default;
  auto operator<=>(const Marking&) const = default;
};

struct Arc {
  std::size_t place = 0;  // index into NetDef::places
  int weight = 1;         // tokens moved per firing

  bool operator==(const Arc&) const = default;
};

struct TransitionDef {
  std::string name;
  std::vector<Arc> inputs;
  std::vector<Arc> outputs;
  TimingSpec timing;

  bool operator==(const TransitionDef&) const = default;
};

// Immutable net structure: places, transitions, weighted arcs, initial
// marking and per-transition timing annotations. Construction is permissive;
// validate() reports invariant violations as data.
struct NetDef {
  std::string name;
  std::vector<std::string> places;
  std::vector<int> initial_tokens;  // aligned with places
  std::vector<TransitionDef> transitions;

  Marking initial_marking() const { return Marking(initial_tokens); }

  std::optional<std::size_t> place_index(std::string_view name) const;
  std::optional<std::size_t> transition_index(std::string_view name) const;

  bool operator==(const NetDef&) const = default;
};

enum class ViolationKind {
  duplicate_identifier,
  undefined_reference,
  bad_arc_weight,
  bad_marking,
  bad_timing,
};

struct Violation {
  ViolationKind kind;
  std::string subject;  // offending identifier
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every structural invariant: disjoint, duplicate-free identifier
// sets; declared arc endpoints; weights >= 1; one non-negative initial count
// per place; well-formed timing parameters. Violations are data, not
// exceptions.
ValidationReport validate(const NetDef& net);

// True when every input place of `transition` holds at least the arc weight.
// Transitions with no input arcs are unconditionally enabled.
bool transition_enabled(const NetDef& net, const Marking& m,
                        std::size_t transition);

// All enabled transitions in declaration order.
std::vector<std::size_t> enabled_transitions(const NetDef& net,
                                             const Marking& m);

// Fires `transition`: removes input_arcs weights, deposits output_arcs
// weights. Pure; throws DisabledTransition naming the blocking place when the
// enabling rule does not hold.
Marking fire(const NetDef& net, const Marking& m, std::size_t transition);

enum class TransitionKind { source, sink, internal };

// source: no inputs; sink: no outputs; internal: both. An isolated
// transition (neither arcs) reports as source: unconditional enabling
// dominates.
TransitionKind classify_transition(const NetDef& net, std::size_t transition);

}  // namespace causanet
