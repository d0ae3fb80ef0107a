#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "causanet/causal.hpp"
#include "causanet/net.hpp"
#include "causanet/sim.hpp"

namespace causanet {

// Machine-checkable assertions bundled with a scenario net. Each payload
// names the entities it constrains and carries its full simulation recipe
// (seeds, horizon, step budget), so a report is reproducible from the data.

// enabled_transitions(net, at) must equal `exactly` (declaration order).
struct ExpectEnabled {
  Marking at;
  std::vector<std::string> exactly;
};

// Firing the listed transitions in order visits exactly these markings;
// markings.front() is the starting point.
struct ExpectFiringSequence {
  std::vector<std::string> fire;
  std::vector<Marking> markings;
};

// Over seeds base_seed..base_seed+runs-1, the transition fires in at least
// min_fired_runs and at most max_fired_runs of the traces.
struct ExpectBatchFiring {
  std::string transition;
  std::size_t runs;
  std::uint64_t base_seed;
  double horizon;
  std::size_t max_steps;
  GatePolicy policy;
  std::size_t min_fired_runs;
  std::size_t max_fired_runs;
};

// The listed transitions are mutually exclusive competitors: each run fires
// exactly total_per_run of them combined, and across the batch every
// competitor wins at least min_wins_each times.
struct ExpectConflictExclusivity {
  std::vector<std::string> transitions;
  std::size_t runs;
  std::uint64_t base_seed;
  double horizon;
  std::size_t max_steps;
  std::size_t total_per_run;
  std::size_t min_wins_each;
};

// Fraction of passing gate draws for the transition across the batch lies
// within expect +- tol.
struct ExpectGatePassRate {
  std::string transition;
  std::size_t runs;
  std::uint64_t base_seed;
  double horizon;
  std::size_t max_steps;
  GatePolicy policy;
  double expect;
  double tol;
};

// With the declared delay the place empties strictly before the first
// completion of delayed_transition; with that delay zeroed the place never
// empties over the same horizon.
struct ExpectDelayedFeedbackContrast {
  std::string place;
  std::string delayed_transition;
  std::uint64_t seed;
  double horizon;
  std::size_t max_steps;
};

// Every event that lowers the place's count is a firing of `transition`,
// and at least one such event occurs.
struct ExpectPlaceDecreasesOnlyBy {
  std::string place;
  std::string transition;
  std::uint64_t seed;
  double horizon;
  std::size_t max_steps;
};

// The trace's marking sequence starts with exactly this prefix.
struct ExpectMarkingSequencePrefix {
  std::uint64_t seed;
  double horizon;
  std::size_t max_steps;
  std::vector<Marking> prefix;
};

// Bounded reachability exploration finds no deadlocked marking.
struct ExpectNoDeadlockWithinBound {
  std::size_t max_nodes;
  int max_tokens;
};

// For every 0/1 token assignment over token_places, some transition is
// enabled iff the boolean model evaluates true.
struct ExpectEnabledMatchesFormula {
  std::vector<std::string> token_places;
  BooleanCausalModel model;
};

using ExpectationCheck =
    std::variant<ExpectEnabled, ExpectFiringSequence, ExpectBatchFiring,
                 ExpectConflictExclusivity, ExpectGatePassRate,
                 ExpectDelayedFeedbackContrast, ExpectPlaceDecreasesOnlyBy,
                 ExpectMarkingSequencePrefix, ExpectNoDeadlockWithinBound,
                 ExpectEnabledMatchesFormula>;

struct Expectation {
  std::string description;
  ExpectationCheck check;
};

struct Scenario {
  std::string name;
  NetDef net;
  std::vector<Expectation> expectations;
};

// Registered scenarios, in registry order: symmetric_overdetermination,
// asymmetric_overdetermination, alternative_causes, sales_orders_delay,
// trumping, fizzling, yale_shooting, job_market.
const std::vector<std::string>& scenario_names();

// Throws on unknown names.
Scenario build_scenario(std::string_view name);

struct CheckResult {
  std::string scenario;
  std::string description;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> check_scenario(const Scenario& scenario);
std::vector<CheckResult> check_all_scenarios();

}  // namespace causanet
