#pragma once

#include <cmath>
#include <cstdint>

namespace cwelch {

/// SplitMix64 (Steele/Lea/Flood). All randomness in the library flows through
/// this generator: 64-bit state, identical output on every platform,
/// substreams derived with stream_seed(). Gaussians come from Box-Muller on
/// the raw uniform draws, so sampled configurations depend only on the seed.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Seed of independent substream `stream` of a master seed.
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed + (stream + 1) * 0x9E3779B97F4A7C15ull);
    return g.next_u64();
  }

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cwelch
