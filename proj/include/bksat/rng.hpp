#pragma once

#include <cstdint>
#include <random>

namespace bksat {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the stream with the given index under a base seed. Depends only on
/// (base, index), so scheduling order never changes which stream a task gets.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(base) ^ mix64(index ^ 0x6A09E667F3BCC909ULL));
}

/// Seedable, splittable 64-bit random stream (Mersenne Twister core).
///
/// Streams are single-owner: copying is disabled so two consumers can never
/// silently share a sequence. Use split() to hand out independent children.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  Rng(const Rng &) = delete;
  Rng &operator=(const Rng &) = delete;
  Rng(Rng &&) noexcept = default;
  Rng &operator=(Rng &&) noexcept = default;

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }

  /// Child stream; a function of (seed, index) only, not of the current state.
  Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p. Uses one uniform draw compared against p, so
  /// streams with equal state are monotonically coupled across p.
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  std::int64_t poisson(double mean) {
    if (mean <= 0.0)
      return 0;
    return std::poisson_distribution<std::int64_t>(mean)(engine_);
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

} // namespace bksat
