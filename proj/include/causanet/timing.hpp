#pragma once

#include <optional>

#include "causanet/fuzzy.hpp"

namespace causanet {

// Per-transition timing and conflict annotation. Plain nets use immediate();
// fuzzy_gated transitions carry a fixed delay plus a membership label that
// gates whether an enabling leads to a firing attempt at all.
struct TimingSpec {
  enum class Kind { immediate, deterministic, exponential, uniform, fuzzy_gated };

  Kind kind = Kind::immediate;
  double delay = 0.0;  // deterministic and fuzzy_gated
  double rate = 0.0;   // exponential
  double lo = 0.0;     // uniform
  double hi = 0.0;
  std::optional<FuzzyLabel> gate;  // fuzzy_gated only
  // Relative weight used when simultaneous candidates contend for tokens.
  double conflict_weight = 1.0;

  static TimingSpec immediate() { return {}; }

  static TimingSpec deterministic(double d) {
    TimingSpec s;
    s.kind = Kind::deterministic;
    s.delay = d;
    return s;
  }

  static TimingSpec exponential(double r) {
    TimingSpec s;
    s.kind = Kind::exponential;
    s.rate = r;
    return s;
  }

  static TimingSpec uniform(double lo, double hi) {
    TimingSpec s;
    s.kind = Kind::uniform;
    s.lo = lo;
    s.hi = hi;
    return s;
  }

  static TimingSpec fuzzy_gated(FuzzyLabel label, double d) {
    TimingSpec s;
    s.kind = Kind::fuzzy_gated;
    s.delay = d;
    s.gate = std::move(label);
    return s;
  }

  bool operator==(const TimingSpec&) const = default;
};

}  // namespace causanet
