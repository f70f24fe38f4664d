#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "ofdmjam/types.hpp"

namespace ofdmjam {

// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Random source owned by exactly one Monte-Carlo trial.
///
/// Streams are derived from a root seed and a path of indices (for instance
/// SNR point and block number), so results do not depend on which thread
/// runs which trial.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = mix64(seed);
    for (std::uint64_t p : path) state = mix64(state ^ mix64(p + 0x632be59bd9b4e019ULL));
    return Rng(state);
  }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance
  /// (Marsaglia polar method on a point of the unit disc).
  cd complex_gaussian(double variance = 1.0) {
    while (true) {
      const std::uint64_t r = engine_();
      const double a = static_cast<double>(r >> 32) * 0x1.0p-31 - 1.0;
      const double b = static_cast<double>(r & 0xffffffffULL) * 0x1.0p-31 - 1.0;
      const double s = a * a + b * b;
      if (s < 1.0 && s > 0.0) {
        const double scale = std::sqrt(-variance * std::log(s) / s);
        return {a * scale, b * scale};
      }
    }
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  CVector complex_gaussian_vector(Index n, double variance = 1.0) {
    CVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = complex_gaussian(variance);
    return v;
  }

  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ofdmjam
