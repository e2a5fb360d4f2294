#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bksat/formula.hpp"

namespace bksat::bounds {

// Numerics ----------------------------------------------------------------

/// log C(n, k) for real arguments via lgamma; -inf outside 0 <= k <= n.
double log_binomial(double n, double k);
/// Exact log C(n, k) through 128-bit integers when n <= 60, lgamma otherwise.
double log_binomial(std::int64_t n, std::int64_t k);

// Entropy and layer weights -----------------------------------------------

/// Binary entropy in nats; 0 at the endpoints. DomainError outside [0, 1].
double entropy(double x);
/// dH/dx = log((1 - x) / x) on (0, 1).
double entropy_derivative(double x);
/// x(1 - p) + (1 - x)p: probability a random literal is false at a point
/// with a fraction x of TRUE coordinates.
double eta(BiasParams bias, double x);

// Coverage probabilities ----------------------------------------------------

/// Probability that one biased k-clause forbids a fixed point of layer i:
/// sum_j C(i,j) C(n-i,k-j) / C(n,k) * (1-p)^j p^(k-j), where j counts the
/// clause variables among the TRUE coordinates.
double q_exact(std::int64_t i, std::int64_t n, std::int32_t k, BiasParams bias);

/// Probability that one clause forbids both points of a layer-i pair at even
/// Hamming distance h.
double pair_q_exact(std::int64_t i, std::int64_t n, std::int64_t h, std::int32_t k,
                    BiasParams bias);

enum class CpxMode { exact, asym };
/// exact/discrete: m with C(n,i)(1-Q)^m = 1, i.e. -log C(n,i) / log(1-Q).
/// exact/poisson:  m with C(n,i) exp(-Qm) = 1, i.e. log C(n,i) / Q.
enum class TimeModel { discrete, poisson };

/// Clause density c_{p,x} at which the expected number of layer-xn solutions
/// is one. asym returns H(x) eta(x)^-k and ignores n. Returns 0 at x in {0,1}.
double c_px(double x, std::int64_t n, std::int32_t k, BiasParams bias, CpxMode mode,
            TimeModel time = TimeModel::discrete);

// First-moment optimisation --------------------------------------------------

struct XBounds {
  double x_minus = 0;
  double x_plus = 0;
};

/// x_plus = min(1/2, p / ((k-1)(1-2p))), x_minus = 2/5 x_plus. Needs k >= 3
/// and 0 < p <= 1/2.
XBounds x_bounds(std::int32_t k, BiasParams bias);

/// eta(x) H'(x) - k H(x) (1 - 2p); same sign as the derivative of
/// H(x) eta(x)^-k.
double first_moment_slope_sign(double x, std::int32_t k, BiasParams bias);

struct CpMax {
  double x0 = 0;
  double c_p = 0;
  int iterations = 0;
};

/// Ternary search for the maximiser of H(x) eta(x)^-k on (0, 1). Throws
/// DomainError if the interval does not shrink below tol within max_iter or
/// if x0 falls outside (x_minus, x_plus + tol).
CpMax c_p_maximize(std::int32_t k, BiasParams bias, double tol = 1e-12, int max_iter = 500);

// Closed forms ----------------------------------------------------------------

/// 1 / (4p(1-p)), the 2-SAT threshold.
double alpha2(BiasParams bias);
/// k^-2 (2p(1-p))^(1-k), density below which UCP succeeds with positive
/// probability.
double ucp_bound(std::int32_t k, BiasParams bias);
/// 2 p^(1-k) alpha_k(1/2), the locally-minimal-solution bound.
double single_flip_bound(std::int32_t k, BiasParams bias, double alpha_k_half);
/// Smaller root of 2x^2 - 2x - 2^(-1/K) + 1 = 0, i.e.
/// (1 - sqrt(2^(1-1/K) - 1)) / 2. DomainError for K < 1 (negative
/// discriminant) or K <= 0.
double x_star(double K);
/// Membership in {x : 2x^2 + 2x + 2^(-1/K) - 1 >= 0}. The sign pattern
/// differs from the quadratic defining x_star; both are exposed as written.
bool in_I_K(double x, double K);
/// Chvatal-Szemeredi sparsity radius ((1/2e)(y/te)^y)^(1/(y(k-1)-1)).
/// Needs y > 1/(k-1).
double cs_x(std::int32_t k, double t, double y);

struct ParabolaBounds {
  double lo = 0;     ///< 1 + 2k b^2
  double hi = 0;     ///< 1 + K_k b^2
  double lo_exp = 0; ///< exp(2k b^2)
  double hi_exp = 0; ///< exp((2k^3 2^k / delta0) b^2)
};

ParabolaBounds parabola_bounds(std::int32_t k, double b, double K_k, double delta0);

/// Inputs the theory only bounds; defaults follow the usual orders of
/// magnitude (alpha_k(1/2) <= 2^k ln 2, delta0 = e^-5k, K_k = 2^8k).
struct BoundConfig {
  double K = 1.0;
  std::optional<double> alpha_k_half;
  std::optional<double> delta0;
  std::optional<double> K_k;
  double cs_t = 1.0;
  double cs_y = 1.0;
  /// n used by the exact (finite-n) quantities.
  std::int64_t n = 1000000;
  double tol = 1e-12;

  double alpha_k_half_or_default(std::int32_t k) const;
  double delta0_or_default(std::int32_t k) const;
  double K_k_or_default(std::int32_t k) const;
};

struct BoundReport {
  std::int32_t k = 0;
  BiasParams bias = BiasParams::from_p(0.5);
  std::int64_t n = 0;
  double q_exact = 0, q_asym = 0;       ///< at layer round(x0 n)
  double c_px_exact = 0, c_px_asym = 0; ///< at x0
  double c_px_exact_poisson = 0;
  double x_minus = 0, x_plus = 0, x_star = 0, x0 = 0;
  double c_p = 0;
  double alpha2 = 0;
  double ucp_bound = 0;
  double single_flip_bound = 0;
  double parabola_lo = 0, parabola_hi = 0;
  double parabola_lo_exp = 0, parabola_hi_exp = 0;
  double cs_x = 0;
  double alpha_k_half = 0, delta0 = 0, K_k = 0;
};

/// Evaluates everything at (k, p); needs k >= 3 and 0 < p <= 1/2.
BoundReport bound_report(std::int32_t k, BiasParams bias, const BoundConfig &config = {});

// Second moment ------------------------------------------------------------------

/// E[Z^2] / E[Z]^2 for Z the number of uncovered layer-i points after
/// Poisson(m) clauses: sum_r exp(pairQ(2r) m) C(i,r) C(n-i,r) / C(n,i).
/// Exactly 1 at m = 0. Refuses n > 10^4.
double second_moment_ratio(std::int64_t i, std::int64_t n, std::int32_t k, BiasParams bias,
                           double m);

struct GProfile {
  std::vector<double> z;
  std::vector<double> g;
  /// Analytic second derivative (trigamma form) at each grid point.
  std::vector<double> g2;
  /// Central second difference at interior points (0 at the ends).
  std::vector<double> second_difference;
  double window_lo = 0; ///< eps x / 4
  double window_hi = 0; ///< x
  /// True iff every second difference inside the window is <= slack.
  bool concave_on_window = true;
  /// Smallest grid point inside the window with a positive second difference.
  std::optional<double> first_convex_z;
  /// The z -> 0 limit of g, which equals -eps log C(n, i).
  double g_at_zero = 0;
};

/// g(z) = log[C(i,zn) C(n-i,zn) C(n,i)^(-1 + (1-eps)(1-2z)^(k-1))] with
/// i = round(x n), on `points` evenly spaced z in (0, x]. Binomials use
/// lgamma, so zn need not be an integer.
GProfile g_profile(double x, std::int64_t n, std::int32_t k, double eps, std::size_t points = 400);

/// g restricted to a single point, for callers building their own grids.
double g_value(double z, double x, std::int64_t n, std::int32_t k, double eps);

} // namespace bksat::bounds
