#include <cmath>
#include <limits>

#include "bksat/bounds.hpp"
#include "bksat/bounds_exact.hpp"
#include "numerics.hpp"

namespace bksat::bounds {

using detail::binomial_u128;
using detail::CompensatedSum;
using detail::xlog;

namespace {

constexpr std::int64_t kExactBinomialLimit = 60;

void check_layer(std::int64_t i, std::int64_t n, std::int32_t k) {
  if (n < 0 || i < 0 || i > n)
    throw InvalidParameters("layer index must satisfy 0 <= i <= n");
  if (k < 0 || k > n)
    throw InvalidParameters("clause width must satisfy 0 <= k <= n");
}

// C(i,j) C(n-i,k-j) / C(n,k): hypergeometric weight of j hits among i.
double hypergeometric(std::int64_t i, std::int64_t n, std::int32_t k, std::int32_t j) {
  if (j > i || k - j > n - i)
    return 0.0;
  if (n <= kExactBinomialLimit)
    return static_cast<double>(binomial_u128(i, j)) *
           static_cast<double>(binomial_u128(n - i, k - j)) /
           static_cast<double>(binomial_u128(n, k));
  return std::exp(log_binomial(i, std::int64_t{j}) + log_binomial(n - i, std::int64_t{k - j}) -
                  log_binomial(n, std::int64_t{k}));
}

} // namespace

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n)
    return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n)
    return -std::numeric_limits<double>::infinity();
  if (n <= kExactBinomialLimit)
    return std::log(static_cast<double>(binomial_u128(n, k)));
  return log_binomial(static_cast<double>(n), static_cast<double>(k));
}

double q_exact(std::int64_t i, std::int64_t n, std::int32_t k, BiasParams bias) {
  check_layer(i, n, k);
  const double p = bias.p();
  CompensatedSum sum;
  for (std::int32_t j = 0; j <= k; ++j) {
    double w = hypergeometric(i, n, k, j);
    if (w == 0.0)
      continue;
    sum.add(w * std::exp(xlog(j, 1.0 - p) + xlog(k - j, p)));
  }
  return sum.value();
}

double pair_q_exact(std::int64_t i, std::int64_t n, std::int64_t h, std::int32_t k,
                    BiasParams bias) {
  check_layer(i, n, k);
  if (h % 2 != 0)
    throw InvalidParameters("points of one layer are at even Hamming distance; got h = " +
                            std::to_string(h));
  if (h < 0 || h / 2 > i || h / 2 > n - i)
    throw InvalidParameters("distance h out of range for layer i");
  if (h == 0)
    return q_exact(i, n, k, bias);
  if (k > n - h)
    return 0.0;
  // Both points are forbidden only if the clause lives on the n - h agreeing
  // coordinates, where the pair looks like one point of layer i - h/2.
  double restrict = n <= kExactBinomialLimit
                        ? static_cast<double>(binomial_u128(n - h, k)) /
                              static_cast<double>(binomial_u128(n, k))
                        : std::exp(log_binomial(n - h, std::int64_t{k}) -
                                   log_binomial(n, std::int64_t{k}));
  return restrict * q_exact(i - h / 2, n - h, k, bias);
}

double c_px(double x, std::int64_t n, std::int32_t k, BiasParams bias, CpxMode mode,
            TimeModel time) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("c_px needs 0 <= x <= 1");
  if (x == 0.0 || x == 1.0)
    return 0.0;
  if (mode == CpxMode::asym)
    return entropy(x) * std::pow(eta(bias, x), -static_cast<double>(k));
  if (n <= 0)
    throw InvalidParameters("c_px exact mode needs n >= 1");
  const auto i = static_cast<std::int64_t>(std::llround(x * static_cast<double>(n)));
  if (i == 0 || i == n)
    return 0.0;
  const double Q = q_exact(i, n, k, bias);
  const double lc = log_binomial(n, i);
  const double nn = static_cast<double>(n);
  if (time == TimeModel::poisson)
    return lc / (nn * Q);
  return -lc / (nn * std::log1p(-Q));
}

namespace {

Rational rational_pow(const Rational &base, std::int32_t e) {
  Rational r = 1;
  for (std::int32_t j = 0; j < e; ++j)
    r *= base;
  return r;
}

} // namespace

Rational binomial_exact(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n)
    return 0;
  boost::multiprecision::cpp_int c = 1;
  for (std::int64_t j = 0; j < k; ++j)
    c = c * (n - j) / (j + 1);
  return Rational(c);
}

Rational q_exact_rational(std::int64_t i, std::int64_t n, std::int32_t k, const Rational &p) {
  check_layer(i, n, k);
  Rational sum = 0;
  const Rational q = 1 - p;
  const Rational total = binomial_exact(n, k);
  for (std::int32_t j = 0; j <= k; ++j) {
    Rational w = binomial_exact(i, j) * binomial_exact(n - i, k - j) / total;
    if (w == 0)
      continue;
    sum += w * rational_pow(q, j) * rational_pow(p, k - j);
  }
  return sum;
}

Rational pair_q_exact_rational(std::int64_t i, std::int64_t n, std::int64_t h, std::int32_t k,
                               const Rational &p) {
  check_layer(i, n, k);
  if (h % 2 != 0 || h < 0 || h / 2 > i || h / 2 > n - i)
    throw InvalidParameters("invalid pair distance");
  if (h == 0)
    return q_exact_rational(i, n, k, p);
  if (k > n - h)
    return 0;
  return binomial_exact(n - h, k) / binomial_exact(n, k) *
         q_exact_rational(i - h / 2, n - h, k, p);
}

} // namespace bksat::bounds
