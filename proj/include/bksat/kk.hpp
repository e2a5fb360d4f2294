#pragma once

#include <cstdint>
#include <vector>

#include "bksat/bounds_exact.hpp"
#include "bksat/formula.hpp"
#include "bksat/stats.hpp"

namespace bksat::kk {

// Cascades ------------------------------------------------------------------

/// r-cascade N = C(a_0, r) + C(a_1 - 1, r - 1) + ... + C(a_j - j, r - j),
/// with a non-increasing and a_i - i strictly decreasing.
struct Cascade {
  std::int32_t r = 0;
  std::vector<std::int64_t> a;

  /// Textbook form n_{i+1} = a_i - i.
  std::vector<std::int64_t> textbook() const;
  bool operator==(const Cascade &) const = default;
};

/// Exact C(n, k) as a 64-bit integer; LimitExceeded on overflow.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Greedy maximal-binomial decomposition. InvalidParameters for N < 1 or r < 1.
Cascade cascade_decompose(std::int64_t N, std::int32_t r);
/// Sum of the cascade's terms (reproduces N).
std::int64_t cascade_value(const Cascade &c);
/// N^(r) = C(a_0, r+1) + C(a_1 - 1, r) + ... + C(a_j - j, r - j + 1): the
/// largest number of (r+1)-sets whose r-shadow has at most N members.
std::int64_t shadow_bound(const Cascade &c);
/// shadow_bound(cascade_decompose(N, r)), with 0 for N = 0.
std::int64_t shadow_bound(std::int64_t N, std::int32_t r);

// f-vectors -------------------------------------------------------------------

/// Face counts indexed by cardinality: f[0] counts the empty face, f[1]
/// vertices, f[2] edges, and so on.
struct FVector {
  std::vector<std::int64_t> f;
};

/// True iff some simplicial complex has these face counts: f[0] is 0 or 1,
/// everything vanishes when f[0] = 0, and f[s] <= f[s-1]^(s-1) for s >= 2.
bool fvector_valid(const FVector &fv);

/// f_r(a) = sum_i C(a_i - i, r - i) for r = 0..d (faces of dimension r).
std::vector<std::int64_t> f_of_cascade(const std::vector<std::int64_t> &a, std::int32_t d);
/// sum_i 2^(a_i - i), the number of faces of the complex f(a).
std::int64_t cascade_complex_size(const std::vector<std::int64_t> &a);

// Sign functions ----------------------------------------------------------------

/// Function {-1,+1}^d -> {-1, 0, +1}, indexed by bit mask (bit j set iff
/// coordinate j is +1). 0 marks the points where neither value is forced.
struct SignFunctionTable {
  std::int32_t d = 0;
  std::vector<std::int8_t> g;

  bool is_odd() const;
  bool is_monotone() const;
  bool is_zero() const;
  /// g(sigma) = sigma_j.
  static SignFunctionTable dictator(std::int32_t d, std::int32_t j);
  static SignFunctionTable majority(std::int32_t d);
  /// Same function with every value negated.
  SignFunctionTable mirrored() const;
};

/// Expected value of g(s) for s with i.i.d. coordinates, +1 w.p. 1/2 + b,
/// conditional on g(s) != 0. InvalidParameters for g identically 0.
double w_of_g(const SignFunctionTable &g, double b);
bounds::Rational w_of_g_exact(const SignFunctionTable &g, const bounds::Rational &b);

struct MinW {
  bounds::Rational value;
  double value_double = 0.0;
  SignFunctionTable argmin;
  std::uint64_t functions = 0; ///< odd monotone non-zero g enumerated
  bool dictator_attains = false;
};

/// Minimum of w over all odd monotone non-zero g on {-1,+1}^d, d <= 4.
MinW min_w_brute(std::int32_t d, const bounds::Rational &b);

/// (1/2 - b)^i (1/2 + b)^(d - a) - (1/2 + b)^i (1/2 - b)^(d - a).
double S_term(std::int64_t i, std::int64_t a, std::int32_t d, double b);
/// sum_i S(i, a_i); a non-increasing with a_0 <= d - 1.
double w_of_cascade(const std::vector<std::int64_t> &a, std::int32_t d, double b);

// Russo's formula --------------------------------------------------------------

struct RussoReport {
  double expectation = 0.0;
  double numeric_derivative = 0.0; ///< centred difference in p
  double pivotal_sum = 0.0;        ///< sum_i E_p[X(s^{+i}) - X(s^{-i})]
  double ratio = 0.0;              ///< numeric_derivative / pivotal_sum (0 if both vanish)
  /// +1 or -1: sign relating dE/dp to the pivotal sum; 0 when the pivotal
  /// sum vanishes.
  int sign = 0;
};

/// Expectation of X over {-1,+1}^d with Pr(s_i = -1) = p.
double russo_expectation(const std::vector<double> &X, std::int32_t d, double p);
/// X indexed like SignFunctionTable. d <= 16, 0 < p - dp < p + dp < 1.
RussoReport russo_check(const std::vector<double> &X, std::int32_t d, double p, double dp);

// Pivotal probabilities ------------------------------------------------------------

struct PivotalConfig {
  std::int32_t n = 30;
  std::int32_t k = 3;
  BiasParams bias = BiasParams::from_p(0.45);
  double t = 4.0;
  std::uint64_t trials = 100000;
  std::uint64_t base_seed = 1;
  /// Trials (from the start) in which the spine characterisation of
  /// unsatisfying clauses is checked in both directions for every
  /// satisfiable formula; later trials check only counted events.
  std::uint64_t full_spine_checks = 1000;
  unsigned threads = 0;
};

struct PivotalEstimates {
  PivotalConfig config;
  std::uint64_t sat = 0;        ///< trials with the base formula satisfiable
  std::uint64_t events = 0;     ///< Phi sat, Phi and C unsat
  std::uint64_t events_plus = 0;
  std::uint64_t events_minus = 0;
  double rho = 0, rho_plus = 0, rho_minus = 0;
  Interval rho_ci, rho_plus_ci, rho_minus_ci;
  /// (rho_plus - rho_minus) / rho with a delta-method 95% half width.
  double ratio = 0, ratio_half_width = 0;
  /// rho - p rho_plus - (1-p) rho_minus, which vanishes because C's first
  /// literal is positive with probability p; with its 95% half width.
  double identity_residual = 0, identity_half_width = 0;
  /// rho - (1/2 + b) rho_plus - (1/2 - b) rho_minus.
  double swapped_identity_residual = 0, swapped_identity_half_width = 0;
  std::uint64_t spine_checks = 0;
  std::uint64_t spine_violations = 0;
};

/// Monte Carlo over (Phi, C): Phi has Poisson(t n) clauses, C is a fresh
/// clause and C_+/C_- force the sign of its lowest variable. Trial i draws
/// everything from derive_seed(base_seed, i).
PivotalEstimates pivotal_rho_estimate(const PivotalConfig &config);

} // namespace bksat::kk
