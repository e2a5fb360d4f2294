#pragma once

#include <cstdint>
#include <span>

namespace bksat {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const noexcept { return 0.5 * (hi - lo); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Wilson score interval for a binomial proportion (z = 1.96 for 95%).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Mean and unbiased sample variance.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double standard_error() const noexcept;
};

Moments moments(std::span<const double> xs);

/// Welford accumulator.
class RunningMoments {
public:
  void add(double x) noexcept;
  Moments result() const noexcept;

private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

} // namespace bksat
