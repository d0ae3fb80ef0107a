#include "causanet/net.hpp"

#include <set>

#include "causanet/textfmt.hpp"

namespace causanet {

std::string Marking::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  out += ')';
  return out;
}

std::optional<std::size_t> NetDef::place_index(std::string_view n) const {
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (places[i] == n) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> NetDef::transition_index(std::string_view n) const {
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (transitions[i].name == n) return i;
  }
  return std::nullopt;
}

namespace {

void check_timing(const TransitionDef& t, ValidationReport& report) {
  const TimingSpec& spec = t.timing;
  auto bad = [&](const std::string& detail) {
    report.violations.push_back({ViolationKind::bad_timing, t.name, detail});
  };
  switch (spec.kind) {
    case TimingSpec::Kind::immediate:
      break;
    case TimingSpec::Kind::deterministic:
      if (spec.delay < 0) bad("deterministic delay is negative");
      break;
    case TimingSpec::Kind::exponential:
      if (spec.rate <= 0) bad("exponential rate must be positive");
      break;
    case TimingSpec::Kind::uniform:
      if (spec.lo < 0) bad("uniform lower bound is negative");
      if (spec.lo > spec.hi) bad("uniform bounds out of order");
      break;
    case TimingSpec::Kind::fuzzy_gated:
      if (spec.delay < 0) bad("fuzzy-gated delay is negative");
      if (!spec.gate) bad("fuzzy-gated transition has no label");
      break;
  }
  if (spec.conflict_weight <= 0) bad("conflict weight must be positive");
}

}  // namespace

ValidationReport validate(const NetDef& net) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const auto& p : net.places) {
    if (!seen.insert(p).second) {
      report.violations.push_back(
          {ViolationKind::duplicate_identifier, p, "place declared twice"});
    }
  }
  for (const auto& t : net.transitions) {
    if (!seen.insert(t.name).second) {
      report.violations.push_back({ViolationKind::duplicate_identifier, t.name,
                                   "identifier already used by a place or "
                                   "transition"});
    }
  }
  for (const auto& t : net.transitions) {
    auto check_arcs = [&](const std::vector<Arc>& arcs, const char* side) {
      for (const auto& arc : arcs) {
        if (arc.place >= net.places.size()) {
          report.violations.push_back(
              {ViolationKind::undefined_reference, t.name,
               std::string(side) + " arc references undeclared place #" +
                   std::to_string(arc.place)});
        }
        if (arc.weight < 1) {
          report.violations.push_back(
              {ViolationKind::bad_arc_weight, t.name,
               std::string(side) + " arc weight " +
                   std::to_string(arc.weight) + " (must be >= 1)"});
        }
      }
    };
    check_arcs(t.inputs, "input");
    check_arcs(t.outputs, "output");
    check_timing(t, report);
  }
  if (net.initial_tokens.size() != net.places.size()) {
    report.violations.push_back(
        {ViolationKind::bad_marking, net.name,
         "initial marking has " + std::to_string(net.initial_tokens.size()) +
             " entries for " + std::to_string(net.places.size()) + " places"});
  }
  for (std::size_t i = 0; i < net.initial_tokens.size(); ++i) {
    if (net.initial_tokens[i] < 0) {
      std::string place =
          i < net.places.size() ? net.places[i] : "#" + std::to_string(i);
      report.violations.push_back({ViolationKind::bad_marking, place,
                                   "negative initial token count"});
    }
  }
  return report;
}

bool transition_enabled(const NetDef& net, const Marking& m,
                        std::size_t transition) {
  if (transition >= net.transitions.size()) {
    throw Error("unknown transition index " + std::to_string(transition));
  }
  for (const auto& arc : net.transitions[transition].inputs) {
    if (m[arc.place] < arc.weight) return false;
  }
  return true;
}

std::vector<std::size_t> enabled_transitions(const NetDef& net,
                                             const Marking& m) {
  if (m.size() != net.places.size()) {
    throw Error("marking has " + std::to_string(m.size()) + " entries for " +
                std::to_string(net.places.size()) + " places");
  }
  std::vector<std::size_t> enabled;
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    if (transition_enabled(net, m, t)) enabled.push_back(t);
  }
  return enabled;
}

Marking fire(const NetDef& net, const Marking& m, std::size_t transition) {
  if (m.size() != net.places.size()) {
    throw Error("marking has " + std::to_string(m.size()) + " entries for " +
                std::to_string(net.places.size()) + " places");
  }
  if (transition >= net.transitions.size()) {
    throw Error("unknown transition index " + std::to_string(transition));
  }
  const TransitionDef& t = net.transitions[transition];
  for (const auto& arc : t.inputs) {
    if (m[arc.place] < arc.weight) {
      throw DisabledTransition(
          "cannot fire " + t.name + ": place " + net.places[arc.place] +
              " holds " + std::to_string(m[arc.place]) + " of " +
              std::to_string(arc.weight) + " required tokens",
          net.places[arc.place]);
    }
  }
  Marking out = m;
  for (const auto& arc : t.inputs) out[arc.place] -= arc.weight;
  for (const auto& arc : t.outputs) out[arc.place] += arc.weight;
  return out;
}

TransitionKind classify_transition(const NetDef& net, std::size_t transition) {
  if (transition >= net.transitions.size()) {
    throw Error("unknown transition index " + std::to_string(transition));
  }
  const TransitionDef& t = net.transitions[transition];
  if (t.inputs.empty()) return TransitionKind::source;
  if (t.outputs.empty()) return TransitionKind::sink;
  return TransitionKind::internal;
}

}  // namespace causanet
