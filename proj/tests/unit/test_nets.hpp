#pragma once

#include <cstdlib>
#include <string>

#include "causanet/net.hpp"
#include "causanet/rng.hpp"

namespace causanet::testing {

// Reconstruction used throughout: five places, t1 consumes two tokens from
// p1 and one from p2, t2/t3 compete for p3.
inline NetDef fig2_left() {
  NetDef net;
  net.name = "fig2_left";
  net.places = {"p1", "p2", "p3", "p4", "p5"};
  net.initial_tokens = {2, 2, 0, 0, 0};
  net.transitions = {
      {"t1", {{0, 2}, {1, 1}}, {{2, 1}}, TimingSpec::immediate()},
      {"t2", {{2, 1}}, {{3, 1}}, TimingSpec::immediate()},
      {"t3", {{2, 1}}, {{4, 1}}, TimingSpec::immediate()},
  };
  return net;
}

inline NetDef job_market() {
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

// Small random untimed nets for property tests.
inline NetDef random_net(RandomSource& rng) {
  NetDef net;
  net.name = "random";
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng.next_u64() % (hi - lo + 1));
  };
  int places = pick(1, 5);
  int transitions = pick(1, 5);
  for (int p = 0; p < places; ++p) {
    net.places.push_back("p" + std::to_string(p));
    net.initial_tokens.push_back(pick(0, 3));
  }
  for (int t = 0; t < transitions; ++t) {
    TransitionDef def;
    def.name = "t" + std::to_string(t);
    for (int p = 0; p < places; ++p) {
      if (pick(0, 2) == 0) {
        def.inputs.push_back({static_cast<std::size_t>(p), pick(1, 3)});
      }
      if (pick(0, 2) == 0) {
        def.outputs.push_back({static_cast<std::size_t>(p), pick(1, 3)});
      }
    }
    net.transitions.push_back(std::move(def));
  }
  return net;
}

inline std::string scenarios_dir() {
  if (const char* env = std::getenv("CAUSANET_SCENARIOS")) return env;
  return "scenarios";
}

}  // namespace causanet::testing
