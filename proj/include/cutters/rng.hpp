// SPDX-License-Identifier: Apache-2.0

#ifndef CUTTERS_RNG_HPP
#define CUTTERS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cutters {

/// Seeded draws over mt19937_64. std::uniform_real_distribution and friends
/// are implementation-defined, so every draw goes through fixed arithmetic;
/// a given seed yields the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0,1), 53 significant bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller (no spare caching, draw order is fixed).
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0,1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cutters

#endif
