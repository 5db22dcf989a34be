#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace opmeans {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// The splitmix64 output finalizer.
constexpr std::uint64_t splitmix_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of trial i of law j: F(F(master + γ(i+1)) + γ(j+1)), F the finalizer
/// above and γ the golden-ratio increment, all arithmetic mod 2^64.
constexpr std::uint64_t mix(std::uint64_t master, std::uint64_t i, std::uint64_t j) noexcept {
  return splitmix_finalize(splitmix_finalize(master + kGolden * (i + 1)) + kGolden * (j + 1));
}

/// Counter-based splitmix64: the k-th output is F(seed + k·γ). Any language
/// with wrapping 64-bit integers reproduces the stream exactly.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden;
    return splitmix_finalize(state_);
  }

  /// Top 53 bits scaled to [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Box–Muller, cosine branch, from two consecutive uniforms. 1 − u keeps
  /// the logarithm's argument in (0, 1].
  double normal() noexcept {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// exp(U·ln hi) for U uniform in [0, 1): log-uniform on [1, hi).
  double log_uniform(double hi) noexcept { return std::exp(uniform() * std::log(hi)); }

private:
  std::uint64_t state_;
};

}  // namespace opmeans
