#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causanet/net.hpp"
#include "causanet/rng.hpp"

namespace causanet {

// How a fuzzy gate label is reduced to a firing decision.
enum class GatePolicy { centroid, sampled };

struct DrawRecord {
  enum class Kind { delay, gate, conflict };
  Kind kind;
  std::size_t transition;
  double value = 0.0;      // sampled delay, or the uniform draw
  double threshold = 0.0;  // gate: the probability the draw was tested against
  bool pass = false;       // gate outcome
};

struct SimEvent {
  double time;
  std::size_t transition;
  Marking pre;   // tokens with in-flight reservations counted back in
  Marking post;
  std::vector<DrawRecord> draws;  // draws made while scheduling this step
};

// A scheduled firing: input tokens have been removed from the marking and are
// held in `reserved` until the due time, when outputs are deposited.
struct PendingFiring {
  std::size_t transition;
  double due;
  std::uint64_t seq;  // reservation order; breaks due-time ties FIFO
  std::vector<Arc> reserved;
};

struct SimState {
  double clock = 0.0;
  Marking marking;  // reserved tokens removed
  std::vector<PendingFiring> pending;
  // A transition whose gate failed stays silent until it is structurally
  // disabled and then re-enabled, which draws a fresh gate.
  std::vector<std::uint8_t> gate_blocked;
  RandomSource rng;
  std::uint64_t next_seq = 0;

  // Marking as an observer sees it: reserved tokens put back in their source
  // places. Scheduling never changes this view, only completions do.
  Marking visible_marking() const;
};

SimState make_initial_state(const NetDef& net, std::uint64_t seed);

// Immediate -> 0, deterministic -> the delay, exponential/uniform -> one draw
// advancing rng, fuzzy_gated -> the declared delay (the label gates firing,
// it does not stretch time).
double sample_delay(const TimingSpec& spec, RandomSource& rng);

// Weighted choice among mutually exclusive candidates: probability of
// candidate i is weights[i] / sum(weights). Advances rng.
std::size_t resolve_conflict(std::span<const std::size_t> candidates,
                             std::span<const double> weights,
                             RandomSource& rng);

// centroid: u < centroid(label); sampled: p drawn from the normalized
// membership density, then u < p. Advances rng either way.
bool resolve_fuzzy_gate(const FuzzyLabel& label, RandomSource& rng,
                        GatePolicy policy);
bool resolve_fuzzy_gate(const FuzzyLabel& label, RandomSource& rng,
                        GatePolicy policy, DrawRecord& record);

struct StepResult {
  bool deadlocked = false;
  std::optional<SimEvent> event;
  std::vector<DrawRecord> draws;  // scheduling draws (also on event, if any)
  SimState state;
};

// One discrete-event step: (1) every newly enabled transition draws its gate,
// samples its delay and reserves its input tokens — candidates racing for the
// same tokens are served in due-time order, simultaneous contenders by
// weighted draw, simultaneous independents in reservation order; (2) the
// earliest pending firing completes, advancing the clock and depositing
// output tokens. Returns the deadlock marker when nothing is enabled and
// nothing is pending.
StepResult step(const NetDef& net, const SimState& state, GatePolicy policy);

enum class StopReason { horizon, deadlock, step_limit };

struct RunConfig {
  double horizon = 1e9;
  std::uint64_t max_steps = 100000;
  std::uint64_t seed = 0;
  GatePolicy policy = GatePolicy::centroid;
};

struct SimTrace {
  std::string net_name;
  std::vector<std::string> place_names;
  std::vector<std::string> transition_names;
  std::uint64_t seed = 0;
  GatePolicy policy = GatePolicy::centroid;
  Marking initial;
  std::vector<SimEvent> events;
  // Draws from a final scheduling pass that ended in deadlock (failed gates).
  std::vector<DrawRecord> final_draws;
  StopReason reason = StopReason::horizon;
  double final_clock = 0.0;
  Marking final_marking;
};

// Iterates step until the clock would pass the horizon, the step budget is
// exhausted, or the net deadlocks. Identical (net, config) inputs produce
// byte-identical traces.
SimTrace run(const NetDef& net, const RunConfig& config);

// Line-oriented text form of a trace; stable byte-for-byte across runs.
// Header: seed, rng algorithm, policy, place order, initial marking. One
// "event" record per firing, "draw" records for the random decisions that
// preceded it, and a final "end" record with the stop reason.
std::string trace_to_text(const SimTrace& trace);

const char* to_string(StopReason reason);
const char* to_string(GatePolicy policy);

}  // namespace causanet
