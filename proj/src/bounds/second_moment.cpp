#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/trigamma.hpp>

#include "bksat/bounds.hpp"

namespace bksat::bounds {

double second_moment_ratio(std::int64_t i, std::int64_t n, std::int32_t k, BiasParams bias,
                           double m) {
  if (n > 10000)
    throw LimitExceeded("second_moment_ratio sums exactly and refuses n > 10^4");
  if (n < 0 || i < 0 || i > n || k < 0 || k > n)
    throw InvalidParameters("need 0 <= i <= n and 0 <= k <= n");
  if (!(m >= 0.0))
    throw InvalidParameters("clause count m must be non-negative");
  if (m == 0.0)
    return 1.0;
  const double lc = log_binomial(n, i);
  const std::int64_t rmax = std::min(i, n - i);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(rmax) + 1);
  for (std::int64_t r = 0; r <= rmax; ++r)
    logs.push_back(pair_q_exact(i, n, 2 * r, k, bias) * m + log_binomial(i, r) +
                   log_binomial(n - i, r) - lc);
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs)
    sum += std::exp(l - top);
  return std::exp(top + std::log(sum));
}

double g_value(double z, double x, std::int64_t n, std::int32_t k, double eps) {
  const double nn = static_cast<double>(n);
  const double i = std::round(x * nn);
  const double zn = z * nn;
  const double exponent = -1.0 + (1.0 - eps) * std::pow(1.0 - 2.0 * z, k - 1);
  return log_binomial(i, zn) + log_binomial(nn - i, zn) + exponent * log_binomial(nn, i);
}

GProfile g_profile(double x, std::int64_t n, std::int32_t k, double eps, std::size_t points) {
  if (!(x > 0.0 && x <= 0.5))
    throw DomainError("g_profile needs 0 < x <= 1/2");
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("g_profile needs 0 < eps < 1");
  if (points < 3 || n < 2 || k < 1)
    throw InvalidParameters("g_profile grid is degenerate");
  const double nn = static_cast<double>(n);
  const double i = std::round(x * nn);
  const double lc = log_binomial(nn, i);

  GProfile out;
  out.window_lo = eps * x / 4.0;
  out.window_hi = x;
  out.g_at_zero = -eps * lc;
  for (std::size_t j = 1; j <= points; ++j) {
    const double z = x * static_cast<double>(j) / static_cast<double>(points);
    const double zn = z * nn;
    out.z.push_back(z);
    out.g.push_back(g_value(z, x, n, k, eps));
    // d^2/dz^2 log C(a, zn) = -n^2 (psi1(zn + 1) + psi1(a - zn + 1)).
    double d2 = -nn * nn *
                (boost::math::trigamma(zn + 1.0) + boost::math::trigamma(i - zn + 1.0) +
                 boost::math::trigamma(zn + 1.0) + boost::math::trigamma(nn - i - zn + 1.0));
    if (k >= 3)
      d2 += (1.0 - eps) * lc * 4.0 * (k - 1) * (k - 2) * std::pow(1.0 - 2.0 * z, k - 3);
    out.g2.push_back(d2);
  }
  out.second_difference.assign(out.g.size(), 0.0);
  for (std::size_t j = 1; j + 1 < out.g.size(); ++j) {
    const double sd = out.g[j - 1] - 2.0 * out.g[j] + out.g[j + 1];
    out.second_difference[j] = sd;
    const double slack =
        1e-10 * (std::fabs(out.g[j - 1]) + std::fabs(out.g[j]) + std::fabs(out.g[j + 1]));
    if (out.z[j] >= out.window_lo && out.z[j] <= out.window_hi && sd > slack) {
      out.concave_on_window = false;
      if (!out.first_convex_z)
        out.first_convex_z = out.z[j];
    }
  }
  return out;
}

} // namespace bksat::bounds
