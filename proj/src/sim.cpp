#include "causanet/sim.hpp"

#include <algorithm>
#include <cmath>

#include "causanet/textfmt.hpp"

namespace causanet {

Marking SimState::visible_marking() const {
  Marking m = marking;
  for (const auto& firing : pending) {
    for (const auto& arc : firing.reserved) m[arc.place] += arc.weight;
  }
  return m;
}

SimState make_initial_state(const NetDef& net, std::uint64_t seed) {
  SimState s{.clock = 0.0,
             .marking = net.initial_marking(),
             .pending = {},
             .gate_blocked = std::vector<std::uint8_t>(net.transitions.size(), 0),
             .rng = RandomSource(seed),
             .next_seq = 0};
  return s;
}

double sample_delay(const TimingSpec& spec, RandomSource& rng) {
  switch (spec.kind) {
    case TimingSpec::Kind::immediate:
      return 0.0;
    case TimingSpec::Kind::deterministic:
      if (spec.delay < 0) throw Error("negative deterministic delay");
      return spec.delay;
    case TimingSpec::Kind::exponential:
      return rng.exponential(spec.rate);
    case TimingSpec::Kind::uniform:
      if (spec.lo < 0 || spec.lo > spec.hi) {
        throw Error("invalid uniform delay bounds");
      }
      return rng.uniform(spec.lo, spec.hi);
    case TimingSpec::Kind::fuzzy_gated:
      if (spec.delay < 0) throw Error("negative fuzzy-gated delay");
      return spec.delay;
  }
  return 0.0;
}

namespace {

std::size_t weighted_pick(std::span<const std::size_t> candidates,
                          std::span<const double> weights, RandomSource& rng,
                          double* u_out) {
  if (candidates.empty()) throw Error("resolve_conflict: no candidates");
  if (weights.size() != candidates.size()) {
    throw Error("resolve_conflict: one weight per candidate required");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w <= 0.0) throw Error("resolve_conflict: non-positive weight");
    total += w;
  }
  double u = rng.uniform01();
  if (u_out) *u_out = u;
  double mark = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    acc += weights[i];
    if (mark < acc) return candidates[i];
  }
  return candidates.back();
}

}  // namespace

std::size_t resolve_conflict(std::span<const std::size_t> candidates,
                             std::span<const double> weights,
                             RandomSource& rng) {
  return weighted_pick(candidates, weights, rng, nullptr);
}

bool resolve_fuzzy_gate(const FuzzyLabel& label, RandomSource& rng,
                        GatePolicy policy) {
  DrawRecord ignored{};
  return resolve_fuzzy_gate(label, rng, policy, ignored);
}

bool resolve_fuzzy_gate(const FuzzyLabel& label, RandomSource& rng,
                        GatePolicy policy, DrawRecord& record) {
  double threshold = policy == GatePolicy::centroid ? label.centroid()
                                                    : label.sample(rng);
  double u = rng.uniform01();
  record.kind = DrawRecord::Kind::gate;
  record.value = u;
  record.threshold = threshold;
  record.pass = u < threshold;
  return record.pass;
}

namespace {

bool has_pending(const SimState& s, std::size_t transition) {
  for (const auto& p : s.pending) {
    if (p.transition == transition) return true;
  }
  return false;
}

void reserve(const NetDef& net, SimState& s, std::size_t transition,
             double due) {
  const auto& inputs = net.transitions[transition].inputs;
  for (const auto& arc : inputs) s.marking[arc.place] -= arc.weight;
  s.pending.push_back({transition, due, s.next_seq++, inputs});
}

struct Candidate {
  std::size_t transition;
  double due;
};

// Reservation phase: enabled transitions draw gates and delays, then claim
// their input tokens. Earlier due times claim first; a group tied on due time
// claims in declaration order when the marking covers all of them, otherwise
// the order is decided by successive conflict_weight draws and losers are
// dropped once disabled. Reservations only remove tokens, so one sweep over
// the declaration order is complete.
void scheduling_pass(const NetDef& net, SimState& s, GatePolicy policy,
                     std::vector<DrawRecord>& draws) {
  // Re-arm gate draws for transitions that lost their enabling.
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    if (s.gate_blocked[t] && !transition_enabled(net, s.marking, t)) {
      s.gate_blocked[t] = 0;
    }
  }

  std::vector<Candidate> candidates;
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    if (has_pending(s, t)) continue;  // single-server
    if (s.gate_blocked[t]) continue;
    if (!transition_enabled(net, s.marking, t)) continue;
    const TimingSpec& spec = net.transitions[t].timing;
    if (spec.kind == TimingSpec::Kind::fuzzy_gated) {
      DrawRecord record{};
      record.transition = t;
      bool pass = resolve_fuzzy_gate(*spec.gate, s.rng, policy, record);
      draws.push_back(record);
      if (!pass) {
        s.gate_blocked[t] = 1;
        continue;
      }
    }
    double delay = sample_delay(spec, s.rng);
    if (spec.kind == TimingSpec::Kind::exponential ||
        spec.kind == TimingSpec::Kind::uniform) {
      draws.push_back({DrawRecord::Kind::delay, t, delay, 0.0, false});
    }
    candidates.push_back({t, s.clock + delay});
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.due < b.due;
                   });

  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i;
    while (j < candidates.size() && candidates[j].due == candidates[i].due) {
      ++j;
    }
    // [i, j): one due-time group, still in declaration order.
    std::vector<int> demand(net.places.size(), 0);
    for (std::size_t k = i; k < j; ++k) {
      for (const auto& arc : net.transitions[candidates[k].transition].inputs) {
        demand[arc.place] += arc.weight;
      }
    }
    bool covered = true;
    for (std::size_t p = 0; p < demand.size(); ++p) {
      if (demand[p] > s.marking[p]) {
        covered = false;
        break;
      }
    }
    if (covered) {
      for (std::size_t k = i; k < j; ++k) {
        reserve(net, s, candidates[k].transition, candidates[k].due);
      }
    } else {
      std::vector<Candidate> remaining(candidates.begin() + i,
                                       candidates.begin() + j);
      while (!remaining.empty()) {
        std::erase_if(remaining, [&](const Candidate& c) {
          return !transition_enabled(net, s.marking, c.transition);
        });
        if (remaining.empty()) break;
        std::size_t pick = 0;
        if (remaining.size() > 1) {
          std::vector<std::size_t> ids(remaining.size());
          std::vector<double> weights(remaining.size());
          for (std::size_t k = 0; k < remaining.size(); ++k) {
            ids[k] = k;
            weights[k] =
                net.transitions[remaining[k].transition].timing.conflict_weight;
          }
          double u = 0.0;
          pick = weighted_pick(ids, weights, s.rng, &u);
          draws.push_back({DrawRecord::Kind::conflict,
                           remaining[pick].transition, u, 0.0, false});
        }
        reserve(net, s, remaining[pick].transition, remaining[pick].due);
        remaining.erase(remaining.begin() + pick);
      }
    }
    i = j;
  }
}

}  // namespace

StepResult step(const NetDef& net, const SimState& state, GatePolicy policy) {
  StepResult result{.deadlocked = false,
                    .event = std::nullopt,
                    .draws = {},
                    .state = state};
  SimState& s = result.state;
  scheduling_pass(net, s, policy, result.draws);

  if (s.pending.empty()) {
    result.deadlocked = true;
    return result;
  }

  auto it = std::min_element(s.pending.begin(), s.pending.end(),
                             [](const PendingFiring& a, const PendingFiring& b) {
                               if (a.due != b.due) return a.due < b.due;
                               return a.seq < b.seq;
                             });
  PendingFiring firing = *it;
  Marking pre = s.visible_marking();
  s.pending.erase(it);
  s.clock = firing.due;
  for (const auto& arc : net.transitions[firing.transition].outputs) {
    s.marking[arc.place] += arc.weight;
  }
  Marking post = s.visible_marking();
  result.event = SimEvent{firing.due, firing.transition, std::move(pre),
                          std::move(post), result.draws};
  return result;
}

SimTrace run(const NetDef& net, const RunConfig& config) {
  if (config.horizon < 0) throw Error("run: horizon must be non-negative");
  SimTrace trace;
  trace.net_name = net.name;
  trace.place_names = net.places;
  for (const auto& t : net.transitions) trace.transition_names.push_back(t.name);
  trace.seed = config.seed;
  trace.policy = config.policy;
  trace.initial = net.initial_marking();

  SimState state = make_initial_state(net, config.seed);
  for (;;) {
    if (trace.events.size() >= config.max_steps) {
      trace.reason = StopReason::step_limit;
      break;
    }
    StepResult result = step(net, state, config.policy);
    if (result.deadlocked) {
      trace.reason = StopReason::deadlock;
      trace.final_draws = std::move(result.draws);
      state = std::move(result.state);
      break;
    }
    if (result.event->time > config.horizon) {
      // The firing beyond the horizon is discarded along with its draws.
      trace.reason = StopReason::horizon;
      break;
    }
    state = std::move(result.state);
    trace.events.push_back(std::move(*result.event));
  }
  trace.final_clock = state.clock;
  trace.final_marking = state.visible_marking();
  return trace;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::horizon:
      return "horizon";
    case StopReason::deadlock:
      return "deadlock";
    case StopReason::step_limit:
      return "step-limit";
  }
  return "?";
}

const char* to_string(GatePolicy policy) {
  return policy == GatePolicy::centroid ? "centroid" : "sampled";
}

namespace {

void append_draw(std::string& out, const SimTrace& trace,
                 const DrawRecord& d) {
  const std::string& trans = trace.transition_names[d.transition];
  switch (d.kind) {
    case DrawRecord::Kind::delay:
      out += "draw delay trans=" + trans;
      break;
    case DrawRecord::Kind::gate:
      out += "draw gate trans=" + trans;
      break;
    case DrawRecord::Kind::conflict:
      out += "draw conflict trans=" + trans;
      break;
  }
  out += " value=" + format_number(d.value);
  if (d.kind == DrawRecord::Kind::gate) {
    out += " threshold=" + format_number(d.threshold);
    out += d.pass ? " outcome=pass" : " outcome=fail";
  }
  out += '\n';
}

}  // namespace

std::string trace_to_text(const SimTrace& trace) {
  std::string out;
  out += "# causanet trace v1\n";
  out += "net " + trace.net_name + "\n";
  out += "seed " + std::to_string(trace.seed) + "\n";
  out += std::string("rng ") + RandomSource::algorithm() + "\n";
  out += std::string("policy ") + to_string(trace.policy) + "\n";
  out += "places";
  for (const auto& p : trace.place_names) out += " " + p;
  out += "\n";
  out += "initial " + trace.initial.to_string() + "\n";
  for (const auto& event : trace.events) {
    for (const auto& d : event.draws) append_draw(out, trace, d);
    out += "event time=" + format_number(event.time);
    out += " trans=" + trace.transition_names[event.transition];
    out += " pre=" + event.pre.to_string();
    out += " post=" + event.post.to_string();
    out += '\n';
  }
  for (const auto& d : trace.final_draws) append_draw(out, trace, d);
  out += std::string("end reason=") + to_string(trace.reason);
  out += " clock=" + format_number(trace.final_clock);
  out += " final=" + trace.final_marking.to_string();
  out += '\n';
  return out;
}

}  // namespace causanet
