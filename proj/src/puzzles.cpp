#include "causanet/puzzles.hpp"

#include <algorithm>
#include <cstdio>

#include "causanet/analysis.hpp"

namespace causanet {

namespace {

std::size_t place_id(const NetDef& net, std::string_view name) {
  auto p = net.place_index(name);
  if (!p) throw Error("scenario references unknown place '" +
                      std::string(name) + "'");
  return *p;
}

std::size_t transition_id(const NetDef& net, std::string_view name) {
  auto t = net.transition_index(name);
  if (!t) throw Error("scenario references unknown transition '" +
                      std::string(name) + "'");
  return *t;
}

// --- scenario constructors -------------------------------------------------

NetDef make_symmetric_overdetermination() {
  NetDef net;
  net.name = "symmetric_overdetermination";
  net.places = {"clarithromycin", "amoxicillin", "cured"};
  net.initial_tokens = {1, 1, 0};
  net.transitions = {
      {"cure", {{0, 1}, {1, 1}}, {{2, 1}}, TimingSpec::immediate()},
  };
  return net;
}

NetDef make_asymmetric_overdetermination() {
  NetDef net;
  net.name = "asymmetric_overdetermination";
  net.places = {"medicine_a", "medicine_b", "patient", "relieved"};
  net.initial_tokens = {1, 1, 1, 0};
  net.transitions = {
      {"treat_a", {{0, 1}, {2, 1}}, {{3, 1}}, TimingSpec::immediate()},
      {"treat_b", {{1, 1}, {2, 1}}, {{3, 1}}, TimingSpec::immediate()},
  };
  return net;
}

NetDef make_alternative_causes() {
  NetDef net;
  net.name = "alternative_causes";
  net.places = {"A", "B", "C", "D", "surgery"};
  net.initial_tokens = {1, 1, 1, 1, 0};
  net.transitions = {
      {"approve_ab", {{0, 1}, {1, 1}}, {{4, 1}}, TimingSpec::immediate()},
      {"approve_ac", {{0, 1}, {2, 1}}, {{4, 1}}, TimingSpec::immediate()},
      {"approve_ad", {{0, 1}, {3, 1}}, {{4, 1}}, TimingSpec::immediate()},
      {"approve_bcd",
       {{1, 1}, {2, 1}, {3, 1}},
       {{4, 1}},
       TimingSpec::immediate()},
  };
  return net;
}

NetDef make_sales_orders_delay() {
  NetDef net;
  net.name = "sales_orders_delay";
  net.places = {"sales", "orders"};
  net.initial_tokens = {3, 0};
  net.transitions = {
      {"sell", {{0, 1}}, {{1, 1}}, TimingSpec::immediate()},
      {"restock", {{1, 1}}, {{0, 1}}, TimingSpec::deterministic(4)},
  };
  return net;
}

NetDef make_trumping() {
  NetDef net;
  net.name = "trumping";
  net.places = {"spell_merlin", "spell_morgana", "prince", "frog"};
  net.initial_tokens = {1, 1, 1, 0};
  net.transitions = {
      {"merlin", {{0, 1}, {2, 1}}, {{3, 1}}, TimingSpec::deterministic(1)},
      {"morgana", {{1, 1}, {2, 1}}, {{3, 1}}, TimingSpec::deterministic(2)},
  };
  return net;
}

NetDef make_fizzling() {
  NetDef net;
  net.name = "fizzling";
  net.places = {"thrower_a", "vandal_b", "lamppost", "broken"};
  net.initial_tokens = {1, 1, 1, 0};
  // The quiet thrower acts out of rage: the gate is certain once the story
  // says the stone flies. The vandal's disposition stays merely highly
  // probable and arrives later.
  net.transitions = {
      {"throw_a",
       {{0, 1}, {2, 1}},
       {{3, 1}},
       TimingSpec::fuzzy_gated(FuzzyLabel::crisp("rage", 1.0), 1)},
      {"throw_b",
       {{1, 1}, {2, 1}},
       {{3, 1}},
       TimingSpec::fuzzy_gated(*find_builtin_label("highly_probable"), 2)},
  };
  return net;
}

NetDef make_yale_shooting() {
  NetDef net;
  net.name = "yale_shooting";
  net.places = {"situation_s0", "situation_s1", "loaded", "alive", "dead"};
  net.initial_tokens = {1, 0, 1, 1, 0};
  net.transitions = {
      {"wait", {{0, 1}}, {{1, 1}}, TimingSpec::deterministic(1)},
      {"shoot",
       {{1, 1}, {2, 1}, {3, 1}},
       {{4, 1}},
       TimingSpec::deterministic(1)},
  };
  return net;
}

NetDef make_job_market() {
  NetDef net;
  net.name = "job_market";
  net.places = {"demands", "offer", "interview", "hired"};
  net.initial_tokens = {3, 1, 0, 0};
  net.transitions = {
      {"apply", {{0, 1}, {1, 1}}, {{2, 1}}, TimingSpec::immediate()},
      {"hire", {{2, 1}}, {{1, 1}, {3, 1}}, TimingSpec::immediate()},
  };
  return net;
}

Scenario scenario_symmetric_overdetermination() {
  Scenario s{"symmetric_overdetermination", make_symmetric_overdetermination(),
             {}};
  s.expectations = {
      {"cure enabled when both drug places hold tokens",
       ExpectEnabled{Marking({1, 1, 0}), {"cure"}}},
      {"cure disabled without clarithromycin",
       ExpectEnabled{Marking({0, 1, 0}), {}}},
      {"cure disabled without amoxicillin",
       ExpectEnabled{Marking({1, 0, 0}), {}}},
      {"joint firing consumes both drugs and cures",
       ExpectFiringSequence{{"cure"},
                            {Marking({1, 1, 0}), Marking({0, 0, 1})}}},
  };
  return s;
}

Scenario scenario_asymmetric_overdetermination() {
  Scenario s{"asymmetric_overdetermination",
             make_asymmetric_overdetermination(),
             {}};
  s.expectations = {
      {"exactly one medicine fires per patient token; both win sometimes",
       ExpectConflictExclusivity{
           {"treat_a", "treat_b"}, 200, 1, 10, 100, 1, 1}},
  };
  return s;
}

Scenario scenario_alternative_causes() {
  BooleanCausalModel surgery;
  surgery.variables = {"A", "B", "C", "D"};
  surgery.clusters = {
      {{0, false}, {1, false}},
      {{0, false}, {2, false}},
      {{0, false}, {3, false}},
      {{1, false}, {2, false}, {3, false}},
  };
  Scenario s{"alternative_causes", make_alternative_causes(), {}};
  s.expectations = {
      {"some cluster transition is enabled exactly when the vote passes",
       ExpectEnabledMatchesFormula{{"A", "B", "C", "D"}, surgery}},
      {"with all four votes every cluster transition is enabled (documented "
       "redundancy)",
       ExpectEnabled{Marking({1, 1, 1, 1, 0}),
                     {"approve_ab", "approve_ac", "approve_ad",
                      "approve_bcd"}}},
  };
  return s;
}

Scenario scenario_sales_orders_delay() {
  Scenario s{"sales_orders_delay", make_sales_orders_delay(), {}};
  s.expectations = {
      {"sales empty strictly before the first restock; never with zero delay",
       ExpectDelayedFeedbackContrast{"sales", "restock", 1, 12, 60}},
  };
  return s;
}

Scenario scenario_trumping() {
  Scenario s{"trumping", make_trumping(), {}};
  s.expectations = {
      {"merlin fires in every run",
       ExpectBatchFiring{"merlin", 1000, 0, 10, 50, GatePolicy::centroid,
                         1000, 1000}},
      {"morgana never fires",
       ExpectBatchFiring{"morgana", 1000, 0, 10, 50, GatePolicy::centroid, 0,
                         0}},
  };
  return s;
}

Scenario scenario_fizzling() {
  Scenario s{"fizzling", make_fizzling(), {}};
  s.expectations = {
      {"the enraged thrower fires in every run",
       ExpectBatchFiring{"throw_a", 500, 0, 10, 50, GatePolicy::centroid, 500,
                         500}},
      {"the fizzled vandal never fires",
       ExpectBatchFiring{"throw_b", 500, 0, 10, 50, GatePolicy::centroid, 0,
                         0}},
      {"vandal gate passes at its centroid rate 0.8 +- 0.03",
       ExpectGatePassRate{"throw_b", 10000, 0, 10, 50, GatePolicy::centroid,
                          0.8, 0.03}},
  };
  return s;
}

Scenario scenario_yale_shooting() {
  Scenario s{"yale_shooting", make_yale_shooting(), {}};
  s.expectations = {
      {"wait then shoot reproduces the inertia story",
       ExpectFiringSequence{{"wait", "shoot"},
                            {Marking({1, 0, 1, 1, 0}), Marking({0, 1, 1, 1, 0}),
                             Marking({0, 0, 0, 0, 1})}}},
      {"the alive token is removed by shoot and never by wait",
       ExpectPlaceDecreasesOnlyBy{"alive", "shoot", 1, 10, 50}},
  };
  return s;
}

Scenario scenario_job_market() {
  Scenario s{"job_market", make_job_market(), {}};
  s.expectations = {
      {"simulation realizes the quoted marking sequence",
       ExpectMarkingSequencePrefix{
           1, 10, 100,
           {Marking({3, 1, 0, 0}), Marking({2, 0, 1, 0}),
            Marking({2, 1, 0, 1})}}},
      {"no deadlock within the explored bound (the offer loop re-enables "
       "apply)",
       ExpectNoDeadlockWithinBound{5, 10}},
  };
  return s;
}

// --- expectation checker ---------------------------------------------------

struct Checker {
  const Scenario& scenario;
  const NetDef& net;

  RunConfig config(std::uint64_t seed, double horizon, std::size_t max_steps,
                   GatePolicy policy = GatePolicy::centroid) const {
    return RunConfig{horizon, max_steps, seed, policy};
  }

  CheckResult operator()(const ExpectEnabled& e) const {
    std::vector<std::string> actual;
    for (std::size_t t : enabled_transitions(net, e.at)) {
      actual.push_back(net.transitions[t].name);
    }
    bool ok = actual == e.exactly;
    std::string detail = "enabled at " + e.at.to_string() + ": {";
    for (std::size_t i = 0; i < actual.size(); ++i) {
      if (i) detail += ", ";
      detail += actual[i];
    }
    detail += "}";
    return {scenario.name, "", ok, detail};
  }

  CheckResult operator()(const ExpectFiringSequence& e) const {
    if (e.markings.size() != e.fire.size() + 1) {
      return {scenario.name, "", false, "malformed expectation"};
    }
    Marking m = e.markings.front();
    for (std::size_t i = 0; i < e.fire.size(); ++i) {
      try {
        m = fire(net, m, transition_id(net, e.fire[i]));
      } catch (const Error& err) {
        return {scenario.name, "", false, err.what()};
      }
      if (m != e.markings[i + 1]) {
        return {scenario.name, "", false,
                "after " + e.fire[i] + " reached " + m.to_string() +
                    ", wanted " + e.markings[i + 1].to_string()};
      }
    }
    return {scenario.name, "", true, "sequence reproduced"};
  }

  CheckResult operator()(const ExpectBatchFiring& e) const {
    std::size_t id = transition_id(net, e.transition);
    std::size_t fired_runs = 0;
    for (std::size_t r = 0; r < e.runs; ++r) {
      SimTrace trace =
          run(net, config(e.base_seed + r, e.horizon, e.max_steps, e.policy));
      bool fired = std::any_of(
          trace.events.begin(), trace.events.end(),
          [&](const SimEvent& ev) { return ev.transition == id; });
      if (fired) ++fired_runs;
    }
    bool ok = fired_runs >= e.min_fired_runs && fired_runs <= e.max_fired_runs;
    return {scenario.name, "", ok,
            e.transition + " fired in " + std::to_string(fired_runs) + "/" +
                std::to_string(e.runs) + " runs"};
  }

  CheckResult operator()(const ExpectConflictExclusivity& e) const {
    std::vector<std::size_t> ids;
    for (const auto& name : e.transitions) {
      ids.push_back(transition_id(net, name));
    }
    std::vector<std::size_t> wins(ids.size(), 0);
    for (std::size_t r = 0; r < e.runs; ++r) {
      SimTrace trace = run(net, config(e.base_seed + r, e.horizon, e.max_steps));
      std::size_t total = 0;
      for (const auto& ev : trace.events) {
        for (std::size_t k = 0; k < ids.size(); ++k) {
          if (ev.transition == ids[k]) {
            ++total;
            ++wins[k];
          }
        }
      }
      if (total != e.total_per_run) {
        return {scenario.name, "", false,
                "run " + std::to_string(r) + " fired " +
                    std::to_string(total) + " competitors, wanted " +
                    std::to_string(e.total_per_run)};
      }
    }
    std::string detail;
    bool ok = true;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!detail.empty()) detail += ", ";
      detail += e.transitions[k] + " won " + std::to_string(wins[k]);
      if (wins[k] < e.min_wins_each) ok = false;
    }
    return {scenario.name, "", ok, detail};
  }

  CheckResult operator()(const ExpectGatePassRate& e) const {
    std::size_t id = transition_id(net, e.transition);
    std::size_t draws = 0;
    std::size_t passes = 0;
    auto tally = [&](const DrawRecord& d) {
      if (d.kind == DrawRecord::Kind::gate && d.transition == id) {
        ++draws;
        if (d.pass) ++passes;
      }
    };
    for (std::size_t r = 0; r < e.runs; ++r) {
      SimTrace trace =
          run(net, config(e.base_seed + r, e.horizon, e.max_steps, e.policy));
      for (const auto& ev : trace.events) {
        for (const auto& d : ev.draws) tally(d);
      }
      for (const auto& d : trace.final_draws) tally(d);
    }
    if (draws == 0) {
      return {scenario.name, "", false, "gate never drawn"};
    }
    double rate = static_cast<double>(passes) / draws;
    bool ok = rate >= e.expect - e.tol && rate <= e.expect + e.tol;
    return {scenario.name, "", ok,
            "gate pass rate " + format_rate(rate) + " over " +
                std::to_string(draws) + " draws"};
  }

  CheckResult operator()(const ExpectDelayedFeedbackContrast& e) const {
    std::size_t place = place_id(net, e.place);
    std::size_t delayed = transition_id(net, e.delayed_transition);

    SimTrace base = run(net, config(e.seed, e.horizon, e.max_steps));
    std::optional<double> empty_time;
    std::optional<double> first_completion;
    for (const auto& ev : base.events) {
      if (!empty_time && ev.post[place] == 0) empty_time = ev.time;
      if (!first_completion && ev.transition == delayed) {
        first_completion = ev.time;
      }
    }
    if (!empty_time || !first_completion) {
      return {scenario.name, "", false,
              "expected both an empty " + e.place + " and a " +
                  e.delayed_transition + " completion"};
    }
    if (!(*empty_time < *first_completion)) {
      return {scenario.name, "", false,
              e.place + " emptied at t=" + std::to_string(*empty_time) +
                  ", not strictly before t=" +
                  std::to_string(*first_completion)};
    }

    NetDef zero = net;
    TimingSpec& spec = zero.transitions[delayed].timing;
    double weight = spec.conflict_weight;
    spec = TimingSpec::immediate();
    spec.conflict_weight = weight;
    SimTrace variant = run(zero, config(e.seed, e.horizon, e.max_steps));
    if (variant.initial[place] == 0) {
      return {scenario.name, "", false, e.place + " starts empty"};
    }
    for (const auto& ev : variant.events) {
      if (ev.post[place] == 0) {
        return {scenario.name, "", false,
                "with zero delay " + e.place + " emptied at t=" +
                    std::to_string(ev.time)};
      }
    }
    return {scenario.name, "", true,
            e.place + " emptied at t=" + std::to_string(*empty_time) +
                " < first " + e.delayed_transition + " at t=" +
                std::to_string(*first_completion) +
                "; never empty with zero delay"};
  }

  CheckResult operator()(const ExpectPlaceDecreasesOnlyBy& e) const {
    std::size_t place = place_id(net, e.place);
    std::size_t allowed = transition_id(net, e.transition);
    SimTrace trace = run(net, config(e.seed, e.horizon, e.max_steps));
    std::size_t decreases = 0;
    for (const auto& ev : trace.events) {
      if (ev.post[place] < ev.pre[place]) {
        ++decreases;
        if (ev.transition != allowed) {
          return {scenario.name, "", false,
                  net.transitions[ev.transition].name + " removed tokens from " +
                      e.place + " at t=" + std::to_string(ev.time)};
        }
      }
    }
    if (decreases == 0) {
      return {scenario.name, "", false,
              e.place + " never lost a token; " + e.transition +
                  " did not fire"};
    }
    return {scenario.name, "", true,
            e.place + " lowered only by " + e.transition + " (" +
                std::to_string(decreases) + " events)"};
  }

  CheckResult operator()(const ExpectMarkingSequencePrefix& e) const {
    SimTrace trace = run(net, config(e.seed, e.horizon, e.max_steps));
    if (e.prefix.empty()) return {scenario.name, "", true, "empty prefix"};
    if (trace.events.size() + 1 < e.prefix.size()) {
      return {scenario.name, "", false,
              "trace has " + std::to_string(trace.events.size()) +
                  " events, prefix needs " +
                  std::to_string(e.prefix.size() - 1)};
    }
    if (trace.initial != e.prefix.front()) {
      return {scenario.name, "", false,
              "initial marking " + trace.initial.to_string() + " != " +
                  e.prefix.front().to_string()};
    }
    for (std::size_t i = 0; i + 1 < e.prefix.size(); ++i) {
      if (trace.events[i].post != e.prefix[i + 1]) {
        return {scenario.name, "", false,
                "event " + std::to_string(i) + " reached " +
                    trace.events[i].post.to_string() + ", wanted " +
                    e.prefix[i + 1].to_string()};
      }
    }
    return {scenario.name, "", true, "marking prefix reproduced"};
  }

  CheckResult operator()(const ExpectNoDeadlockWithinBound& e) const {
    ReachabilityGraph g = reachability_graph(net, e.max_nodes, e.max_tokens);
    auto dead = detect_deadlocks(g);
    if (!dead.empty()) {
      return {scenario.name, "", false,
              "deadlock at " + dead.front().to_string()};
    }
    return {scenario.name, "", true,
            std::to_string(g.nodes.size()) + " explored markings, none dead"};
  }

  CheckResult operator()(const ExpectEnabledMatchesFormula& e) const {
    std::vector<std::size_t> places;
    for (const auto& name : e.token_places) {
      places.push_back(place_id(net, name));
    }
    const std::size_t n = places.size();
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      Marking m = net.initial_marking();
      std::vector<int> assignment(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        int present = (bits >> (n - 1 - i)) & 1;
        m[places[i]] = present;
        assignment[i] = present;
      }
      bool formula = bool_evaluate(e.model, assignment);
      bool fires = !enabled_transitions(net, m).empty();
      if (formula != fires) {
        return {scenario.name, "", false,
                "at " + m.to_string() + " formula says " +
                    (formula ? "fire" : "idle") + " but net says " +
                    (fires ? "fire" : "idle")};
      }
    }
    return {scenario.name, "", true,
            "all " + std::to_string(1u << n) + " assignments agree"};
  }

  static std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
  }
};

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "symmetric_overdetermination",
      "asymmetric_overdetermination",
      "alternative_causes",
      "sales_orders_delay",
      "trumping",
      "fizzling",
      "yale_shooting",
      "job_market",
  };
  return names;
}

Scenario build_scenario(std::string_view name) {
  if (name == "symmetric_overdetermination") {
    return scenario_symmetric_overdetermination();
  }
  if (name == "asymmetric_overdetermination") {
    return scenario_asymmetric_overdetermination();
  }
  if (name == "alternative_causes") return scenario_alternative_causes();
  if (name == "sales_orders_delay") return scenario_sales_orders_delay();
  if (name == "trumping") return scenario_trumping();
  if (name == "fizzling") return scenario_fizzling();
  if (name == "yale_shooting") return scenario_yale_shooting();
  if (name == "job_market") return scenario_job_market();
  throw Error("unknown scenario '" + std::string(name) + "'");
}

std::vector<CheckResult> check_scenario(const Scenario& scenario) {
  std::vector<CheckResult> results;
  Checker checker{scenario, scenario.net};
  for (const auto& expectation : scenario.expectations) {
    CheckResult result;
    try {
      result = std::visit(checker, expectation.check);
    } catch (const Error& e) {
      result = {scenario.name, "", false, e.what()};
    }
    result.description = expectation.description;
    results.push_back(std::move(result));
  }
  return results;
}

std::vector<CheckResult> check_all_scenarios() {
  std::vector<CheckResult> results;
  for (const auto& name : scenario_names()) {
    for (auto& result : check_scenario(build_scenario(name))) {
      results.push_back(std::move(result));
    }
  }
  return results;
}

}  // namespace causanet
