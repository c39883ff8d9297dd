#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace myopic {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Stable 64-bit key for a named sub-stream ("scenario", "tie", ...).
std::uint64_t stream_key(std::string_view name);

/// Combine a seed with any number of counters into a new seed.
template <typename... Counters>
std::uint64_t derive_seed(std::uint64_t seed, Counters... counters) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  ((h = mix64(h ^ mix64(static_cast<std::uint64_t>(counters) + 0x9e3779b97f4a7c15ULL))), ...);
  return h;
}

/// Counter-based generator: draw k of the stream keyed by `key` is
/// mix64(key + k * golden), so a stream is reproducible regardless of how
/// other streams were consumed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound);
  /// Standard normal (Box-Muller, one value per two uniforms).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace myopic
