#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "causanet/error.hpp"

namespace causanet {

// Seeded random source used by every stochastic operation in the toolkit.
// The engine is mt19937_64 and all real-valued draws are derived from raw
// 64-bit words with the explicit formulas below, so a (seed, draw sequence)
// pair replays bit-identically on any platform or language with a Mersenne
// Twister implementation. std::*_distribution is avoided on purpose: its
// output is not pinned by the standard.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  // Identity string recorded in trace headers.
  static constexpr const char* algorithm() { return "mt19937_64"; }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    if (lo > hi) throw Error("uniform: lo > hi");
    return lo + (hi - lo) * uniform01();
  }

  double exponential(double rate) {
    if (rate <= 0.0) throw Error("exponential: rate must be positive");
    // u in [0,1) so 1-u in (0,1]; log never sees zero.
    return -std::log1p(-uniform01()) / rate;
  }

  // Box-Muller, one variate per call (two words consumed, cosine branch).
  double normal(double mean, double stddev) {
    if (stddev <= 0.0) throw Error("normal: stddev must be positive");
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    double z = std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    return mean + stddev * z;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace causanet
