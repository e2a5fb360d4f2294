#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bksat/formula.hpp"
#include "bksat/stats.hpp"
#include "bksat/ucp.hpp"

namespace bksat {
class Rng;
}

namespace bksat::harness {

enum class SolverKind { dpll, two_sat, ucp };

std::string_view to_string(SolverKind s) noexcept;
SolverKind parse_solver(std::string_view text);

struct ExperimentConfig {
  std::int32_t k = 3;
  BiasParams bias = BiasParams::from_p(0.5);
  std::int32_t n = 40;
  std::uint64_t trials = 100;
  SolverKind solver = SolverKind::dpll;
  SampleMode mode = SampleMode::discrete;
  std::uint64_t base_seed = 1;
  std::string output;
  double tolerance = 0.02;
  /// Density bracket for bisection; defaults derive from the analytic bounds.
  std::optional<double> lo, hi;
  /// Clause density for spine experiments.
  double t = 4.0;
  FreeStepPolicy policy = FreeStepPolicy::pseudocode;
  unsigned threads = 0;

  /// Throws InvalidParameters on inconsistent settings.
  void validate() const;
};

/// Whether the chosen solver finds the formula satisfiable. UCP is one-sided:
/// a failed run reports unsatisfiable.
bool solve_instance(const Formula &f, SolverKind solver, FreeStepPolicy policy, Rng &rng);

struct SatPoint {
  double density = 0.0;
  std::uint64_t sat = 0;
  std::uint64_t trials = 0;
  double frequency() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(sat) / static_cast<double>(trials);
  }
  Interval ci() const { return wilson_interval(sat, trials); }
};

/// Empirical Pr(sat) at m = density * n. Trial i uses derive_seed(base_seed, i)
/// at every density, so in discrete mode the formulas at a higher density
/// extend those at a lower one.
SatPoint sat_probability(const ExperimentConfig &cfg, double density);

/// Weighted isotonic (non-increasing) least-squares fit, pool adjacent
/// violators. xs must be sorted by density.
std::vector<double> isotonic_nonincreasing(const std::vector<double> &values,
                                           const std::vector<double> &weights);

struct SatCurve {
  std::vector<SatPoint> points;
  std::vector<double> fitted;
};

SatCurve sat_curve(const ExperimentConfig &cfg, std::vector<double> densities);

struct ThresholdEstimate {
  double alpha_hat = 0.0;
  /// 95% half width: sampling error mapped through the fitted slope plus
  /// half the final bracket.
  double ci = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::vector<SatPoint> table; ///< every probe, sorted by density
  std::vector<double> fitted;  ///< isotonic fit of the table
};

/// Default bracket [ucp_bound / 2, 1.5 c_p] unless the config overrides it.
std::pair<double, double> default_bracket(std::int32_t k, BiasParams bias);

/// Bisection on density for the Pr(sat) = 1/2 crossing. Throws
/// InvalidParameters when the bracket does not straddle 1/2.
ThresholdEstimate threshold_bisect(const ExperimentConfig &cfg);

struct SpineExperiment {
  std::uint64_t trials = 0;
  std::uint64_t satisfiable = 0;
  std::vector<std::uint64_t> histogram; ///< spine size -> count, sat formulas only
  std::uint64_t locked_true = 0;
  std::uint64_t locked_false = 0;
  /// Fraction of spine variables locked TRUE (ratio estimator) with a 95%
  /// half width that treats formulas as clusters.
  double true_fraction = 0.0;
  double true_fraction_ci = 0.0;
  /// Fraction locked to the value that satisfies the more common literal
  /// sign (FALSE for p < 1/2, TRUE for p > 1/2, TRUE at p = 1/2).
  double aligned_fraction = 0.0;
  double aligned_fraction_ci = 0.0;
  std::uint64_t formulas_with_spine = 0;
};

/// Spine statistics of satisfiable formulas with m = t n clauses.
SpineExperiment spine_experiment(const ExperimentConfig &cfg);

struct ParabolaRow {
  double b = 0.0;
  ThresholdEstimate estimate;
  double ratio = 1.0;
  double ratio_ci = 0.0;
  std::optional<double> exact; ///< 1 / (1 - 4b^2) for k = 2
  double lower_bound = 1.0;    ///< 1 + 2k b^2
};

/// Threshold ratios alpha(1/2 - b) / alpha(1/2) over the b grid. The bias
/// in cfg is ignored; the b = 0 estimate is computed once and shared.
std::vector<ParabolaRow> parabola_experiment(const ExperimentConfig &cfg,
                                             const std::vector<double> &bs);

} // namespace bksat::harness
