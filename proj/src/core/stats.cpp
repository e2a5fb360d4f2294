#include "bksat/stats.hpp"

#include <algorithm>
#include <cmath>

namespace bksat {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0)
    return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double Moments::standard_error() const noexcept {
  return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count));
}

Moments moments(std::span<const double> xs) {
  RunningMoments acc;
  for (double x : xs)
    acc.add(x);
  return acc.result();
}

void RunningMoments::add(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

Moments RunningMoments::result() const noexcept {
  Moments m;
  m.count = n_;
  m.mean = mean_;
  m.variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  return m;
}

} // namespace bksat
