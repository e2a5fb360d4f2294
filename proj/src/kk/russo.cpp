#include <bit>
#include <cmath>

#include "bksat/kk.hpp"

namespace bksat::kk {
namespace {

void check_table(const std::vector<double> &X, std::int32_t d) {
  if (d < 0 || d > 16)
    throw LimitExceeded("russo_check handles d <= 16");
  if (X.size() != (std::size_t{1} << d))
    throw InvalidParameters("value table must have 2^d entries");
}

double probability(std::uint32_t s, std::int32_t d, double p) {
  const int plus = std::popcount(s);
  return std::pow(1.0 - p, plus) * std::pow(p, d - plus);
}

} // namespace

double russo_expectation(const std::vector<double> &X, std::int32_t d, double p) {
  check_table(X, d);
  double sum = 0.0;
  for (std::uint32_t s = 0; s < X.size(); ++s)
    sum += X[s] * probability(s, d, p);
  return sum;
}

RussoReport russo_check(const std::vector<double> &X, std::int32_t d, double p, double dp) {
  check_table(X, d);
  if (!(dp > 0.0) || !(p - dp > 0.0) || !(p + dp < 1.0))
    throw InvalidParameters("russo_check needs 0 < p - dp < p + dp < 1");
  RussoReport r;
  r.expectation = russo_expectation(X, d, p);
  r.numeric_derivative =
      (russo_expectation(X, d, p + dp) - russo_expectation(X, d, p - dp)) / (2.0 * dp);
  for (std::uint32_t s = 0; s < X.size(); ++s) {
    const double pr = probability(s, d, p);
    for (std::int32_t i = 0; i < d; ++i) {
      const auto bit = 1u << i;
      r.pivotal_sum += pr * (X[s | bit] - X[s & ~bit]);
    }
  }
  const double scale = std::fabs(r.pivotal_sum) + std::fabs(r.numeric_derivative);
  if (scale < 1e-300) {
    r.ratio = 0.0;
    r.sign = 0;
  } else if (std::fabs(r.pivotal_sum) < 1e-12 * scale) {
    r.ratio = 0.0;
    r.sign = 0;
  } else {
    r.ratio = r.numeric_derivative / r.pivotal_sum;
    r.sign = r.ratio < 0.0 ? -1 : 1;
  }
  return r;
}

} // namespace bksat::kk
