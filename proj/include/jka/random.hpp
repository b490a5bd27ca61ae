#pragma once

#include <cstdint>
#include <random>

#include "jka/rational.hpp"

namespace jka {

/// Seeded source for every random choice in the library. The engine is
/// fixed (mt19937_64) and sampling goes through integer draws only, so
/// streams are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Integer uniform in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  /// Small rational p/q with |p| <= bound and 1 <= q <= den.
  Rational rational(long bound = 5, long den = 4) { return rat(integer(-bound, bound), integer(1, den)); }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jka
