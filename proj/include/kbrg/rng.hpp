#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace kbrg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream: the i-th draw is a pure function of
/// (seed, stream, i), so results never depend on draw order or on how work
/// is split across threads.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix64(seed + mix64(stream + 0x632BE59BD9B4E019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on (0, 1]; never returns 0, so inverse-CDF draws stay finite.
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on the counters (2c, 2c+1).
  double normal(std::uint64_t counter) const noexcept {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

/// Sequential adaptor so a CounterRng can drive <random> distributions.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  explicit CounterEngine(CounterRng rng, std::uint64_t start = 0) noexcept
      : rng_(rng), counter_(start) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return rng_.bits(counter_++); }

  double uniform() noexcept { return rng_.uniform(counter_++); }

 private:
  CounterRng rng_;
  std::uint64_t counter_;
};

/// Per-trial seed derivation: stream index = trial index, `purpose`
/// separates the weight stream from the edge/Gaussian stream.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                    std::uint64_t purpose) noexcept {
  return mix64(mix64(master ^ 0xA0761D6478BD642FULL) + trial * 0xE7037ED1A0B428DBULL +
               purpose);
}

}  // namespace kbrg
