#pragma once

#include <cmath>
#include <cstdint>

#include "rtasim/vec.hpp"

namespace rtasim {

// SplitMix64 finalizer; full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator: draw i of stream s under seed k is a pure function
// of (k, s, i).  Substreams never share state, so parallel episodes see the
// same sequences regardless of thread scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream))) {}

  std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++)); }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; consumes exactly two draws per call.
  double gaussian(double mean, double sigma) {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Fixed purpose ids keep per-use substreams disjoint.
enum class RngStream : std::uint64_t {
  MonteCarloInit = 1,
  AdversarialPolicy = 2,
  FaultNoise = 3,
};

inline CounterRng make_rng(std::uint64_t seed, RngStream purpose, std::uint64_t index) {
  return CounterRng(seed, (static_cast<std::uint64_t>(purpose) << 32) ^ index);
}

}  // namespace rtasim
