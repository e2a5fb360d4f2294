#include <cmath>
#include <numbers>

#include "bksat/bounds.hpp"

namespace bksat::bounds {

double entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("entropy needs 0 <= x <= 1");
  if (x == 0.0 || x == 1.0)
    return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double entropy_derivative(double x) {
  if (!(x > 0.0 && x < 1.0))
    throw DomainError("entropy derivative needs 0 < x < 1");
  return std::log1p(-x) - std::log(x);
}

double eta(BiasParams bias, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("eta needs 0 <= x <= 1");
  const double p = bias.p();
  return x * (1.0 - p) + (1.0 - x) * p;
}

namespace {

void check_first_moment_domain(std::int32_t k, BiasParams bias) {
  if (k < 3)
    throw InvalidParameters("first-moment bounds need k >= 3");
  if (!(bias.p() > 0.0 && bias.p() <= 0.5))
    throw InvalidParameters("first-moment bounds need 0 < p <= 1/2 (map p to 1 - p)");
}

double first_moment_f(double x, std::int32_t k, BiasParams bias) {
  return entropy(x) * std::pow(eta(bias, x), -static_cast<double>(k));
}

} // namespace

XBounds x_bounds(std::int32_t k, BiasParams bias) {
  check_first_moment_domain(k, bias);
  const double p = bias.p();
  const double slope = (k - 1) * (1.0 - 2.0 * p);
  XBounds out;
  out.x_plus = slope <= 0.0 ? 0.5 : std::min(0.5, p / slope);
  out.x_minus = 0.4 * out.x_plus;
  return out;
}

double first_moment_slope_sign(double x, std::int32_t k, BiasParams bias) {
  return eta(bias, x) * entropy_derivative(x) - k * entropy(x) * (1.0 - 2.0 * bias.p());
}

CpMax c_p_maximize(std::int32_t k, BiasParams bias, double tol, int max_iter) {
  if (!(tol > 0.0))
    throw InvalidParameters("tolerance must be positive");
  if (k < 1)
    throw InvalidParameters("k must be positive");
  double lo = 0.0, hi = 1.0;
  CpMax out;
  while (hi - lo >= tol) {
    if (out.iterations++ >= max_iter)
      throw DomainError("ternary search did not reach tolerance within " +
                        std::to_string(max_iter) + " iterations");
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (first_moment_f(m1, k, bias) < first_moment_f(m2, k, bias))
      lo = m1;
    else
      hi = m2;
  }
  out.x0 = 0.5 * (lo + hi);
  out.c_p = first_moment_f(out.x0, k, bias);
  if (k >= 3 && bias.p() > 0.0 && bias.p() <= 0.5) {
    auto xb = x_bounds(k, bias);
    // At p = 1/2 the maximiser sits exactly on x_plus = 1/2.
    if (!(out.x0 > xb.x_minus && out.x0 < xb.x_plus + tol))
      throw DomainError("maximiser " + format_double(out.x0) + " escaped (x_minus, x_plus]");
  }
  return out;
}

double alpha2(BiasParams bias) {
  const double d = 4.0 * bias.p() * (1.0 - bias.p());
  if (d == 0.0)
    throw DomainError("alpha2 is infinite at p in {0, 1}");
  return 1.0 / d;
}

double ucp_bound(std::int32_t k, BiasParams bias) {
  const double d = bias.disagreement();
  return std::pow(d, 1.0 - k) / (static_cast<double>(k) * k);
}

double single_flip_bound(std::int32_t k, BiasParams bias, double alpha_k_half) {
  return 2.0 * std::pow(bias.p(), 1.0 - k) * alpha_k_half;
}

double x_star(double K) {
  if (!(K > 0.0))
    throw DomainError("x_star needs K > 0");
  const double disc = std::pow(2.0, 1.0 - 1.0 / K) - 1.0;
  if (disc < 0.0)
    throw DomainError("x_star: negative discriminant (K < 1)");
  return 0.5 * (1.0 - std::sqrt(disc));
}

bool in_I_K(double x, double K) {
  if (!(K > 0.0))
    throw DomainError("I_K needs K > 0");
  return 2.0 * x * x + 2.0 * x + std::pow(2.0, -1.0 / K) - 1.0 >= 0.0;
}

double cs_x(std::int32_t k, double t, double y) {
  if (k < 2 || !(t > 0.0))
    throw InvalidParameters("cs_x needs k >= 2 and t > 0");
  if (!(y > 1.0 / (k - 1)))
    throw InvalidParameters("cs_x needs y > 1/(k-1)");
  const double e = std::numbers::e;
  return std::pow(std::pow(y / (t * e), y) / (2.0 * e), 1.0 / (y * (k - 1) - 1.0));
}

ParabolaBounds parabola_bounds(std::int32_t k, double b, double K_k, double delta0) {
  if (!(delta0 > 0.0))
    throw InvalidParameters("delta0 must be positive");
  ParabolaBounds out;
  const double b2 = b * b;
  out.lo = 1.0 + 2.0 * k * b2;
  out.hi = 1.0 + K_k * b2;
  out.lo_exp = std::exp(2.0 * k * b2);
  out.hi_exp = std::exp(2.0 * k * k * k * std::ldexp(1.0, k) / delta0 * b2);
  return out;
}

double BoundConfig::alpha_k_half_or_default(std::int32_t k) const {
  return alpha_k_half.value_or(std::ldexp(std::numbers::ln2, k));
}

double BoundConfig::delta0_or_default(std::int32_t k) const {
  return delta0.value_or(std::exp(-5.0 * k));
}

double BoundConfig::K_k_or_default(std::int32_t k) const {
  return K_k.value_or(std::ldexp(1.0, 8 * k));
}

BoundReport bound_report(std::int32_t k, BiasParams bias, const BoundConfig &config) {
  auto xb = x_bounds(k, bias);
  auto opt = c_p_maximize(k, bias, config.tol);
  BoundReport r;
  r.k = k;
  r.bias = bias;
  r.n = config.n;
  r.x_minus = xb.x_minus;
  r.x_plus = xb.x_plus;
  r.x0 = opt.x0;
  r.c_p = opt.c_p;
  r.x_star = x_star(config.K);
  const auto i = static_cast<std::int64_t>(std::llround(opt.x0 * static_cast<double>(config.n)));
  r.q_exact = q_exact(i, config.n, k, bias);
  r.q_asym = std::pow(eta(bias, opt.x0), k);
  r.c_px_exact = c_px(opt.x0, config.n, k, bias, CpxMode::exact, TimeModel::discrete);
  r.c_px_exact_poisson = c_px(opt.x0, config.n, k, bias, CpxMode::exact, TimeModel::poisson);
  r.c_px_asym = c_px(opt.x0, config.n, k, bias, CpxMode::asym);
  r.alpha2 = alpha2(bias);
  r.ucp_bound = ucp_bound(k, bias);
  r.alpha_k_half = config.alpha_k_half_or_default(k);
  r.delta0 = config.delta0_or_default(k);
  r.K_k = config.K_k_or_default(k);
  r.single_flip_bound = single_flip_bound(k, bias, r.alpha_k_half);
  auto pb = parabola_bounds(k, bias.b(), r.K_k, r.delta0);
  r.parabola_lo = pb.lo;
  r.parabola_hi = pb.hi;
  r.parabola_lo_exp = pb.lo_exp;
  r.parabola_hi_exp = pb.hi_exp;
  r.cs_x = cs_x(k, config.cs_t, config.cs_y);
  return r;
}

} // namespace bksat::bounds
