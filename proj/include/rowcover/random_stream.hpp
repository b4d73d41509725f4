#pragma once

// Counter-based random streams. Output i of a stream is a bijective mix of
// (key, i), so every trial or sweep point gets a stream that is a pure
// function of (seed, index) and results do not depend on scheduling.

#include <cmath>
#include <cstdint>
#include <limits>

namespace rowcover {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Independent-looking child seed for (seed, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + mix64(index + 0x9E3779B97F4A7C15ULL));
}

/// Stream purposes, so one seed can feed several independent streams.
enum class StreamTag : std::uint64_t {
  kPattern = 1,
  kValues = 2,
  kOrthogonal = 3,
  kCoverTime = 4,
};

/// Satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(std::uint64_t key) : key_(key) {}
  CounterStream(std::uint64_t seed, StreamTag tag)
      : key_(derive_seed(seed, static_cast<std::uint64_t>(tag))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double theta) { return uniform() < theta; }

  /// Number of trials up to and including the first success, by inversion:
  /// P(result > t) = (1 - theta)^t exactly for U uniform on (0, 1].
  std::uint64_t geometric(double theta) {
    if (theta >= 1.0) return 1;
    const double u = 1.0 - uniform();
    const double t = std::ceil(std::log(u) / std::log1p(-theta));
    return t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rowcover
