#pragma once

#include <cstdint>
#include <random>

namespace stvg {

// Deterministic random source for the synthetic data generator and the
// randomized test suites. All draws go through the fixed mappings below
// rather than std::*_distribution, so a given seed yields the same stream
// on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1), 53 bits of entropy.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], both ends inclusive. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const double span = static_cast<double>(hi - lo) + 1.0;
    auto offset = static_cast<std::int64_t>(uniform() * span);
    if (offset > hi - lo) offset = hi - lo;
    return lo + offset;
  }

  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace stvg
