#pragma once

#include <cmath>
#include <cstdint>

namespace bksat::bounds::detail {

/// Neumaier compensated sum.
class CompensatedSum {
public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Exact C(n, k) for n <= 60 (fits comfortably in 128 bits mid-computation).
inline unsigned __int128 binomial_u128(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  unsigned __int128 c = 1;
  for (std::int64_t j = 0; j < k; ++j)
    c = c * static_cast<unsigned __int128>(n - j) / static_cast<unsigned __int128>(j + 1);
  return c;
}

/// e * log(base) with the convention 0 * log(0) = 0.
inline double xlog(double e, double base) { return e == 0.0 ? 0.0 : e * std::log(base); }

} // namespace bksat::bounds::detail
