#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "moebius_kit/sphere.hpp"

namespace moebius_kit {

/// splitmix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded generator with platform-independent real conversions (the standard
/// distributions are implementation-defined, mt19937_64 itself is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in the open disk.
  Complex in_disk(Complex center, double radius) {
    const double r = radius * std::sqrt(uniform());
    return center + std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

  /// Uniform in the square [-half, half]^2.
  Complex in_square(double half) { return {uniform(-half, half), uniform(-half, half)}; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace moebius_kit
