#pragma once

#include <cstdint>
#include <vector>

#include "bksat/formula.hpp"
#include "bksat/ucp.hpp"

namespace bksat::liquid {

inline constexpr double kDefaultSingularityGuard = 0.05;

struct LiquidParams {
  std::int32_t k = 3;
  BiasParams bias = BiasParams::from_p(0.5);
  double c = 0.0; ///< initial k-clause density m/n
};

/// Densities at time t; c[i - 2] holds c_i for i = 2..k.
struct OdeState {
  double t = 0.0;
  std::vector<double> c;

  double at(std::int32_t i) const { return c[static_cast<std::size_t>(i - 2)]; }
};

/// c * C(k,i) * (2p(1-p) t)^(k-i) * (1-t)^i for 2 <= i <= k, 0 <= t < 1.
double closed_form(std::int32_t i, double t, double c, std::int32_t k, BiasParams bias);
OdeState closed_form_state(const LiquidParams &params, double t);

/// Right-hand side of the density system at (t, state).
std::vector<double> ode_rhs(const LiquidParams &params, double t, const std::vector<double> &c);

/// Classical RK4 with a fixed step from t = 0 to t_end (the last step is
/// shortened to land on t_end). Refuses t_end > 1 - guard.
std::vector<OdeState> integrate(const LiquidParams &params, double t_end, double step,
                                double guard = kDefaultSingularityGuard);

/// Largest |numeric - closed form| over the trajectory and all i.
double max_deviation(const LiquidParams &params, const std::vector<OdeState> &trajectory);

struct EmpiricalRow {
  double t = 0.0;
  std::int32_t i = 0;
  double empirical = 0.0;   ///< mean of S_i(floor(t n)) / n over runs
  double stddev = 0.0;      ///< across runs
  double closed_form = 0.0; ///< 0 for i < 2, which the ODE does not track
};

struct EmpiricalTrajectory {
  std::int32_t n = 0;
  std::int64_t m = 0;
  std::int32_t runs = 0;
  std::vector<EmpiricalRow> rows;   ///< grouped by t, then i = 0..k
  std::int64_t conservation_violations = 0;
  std::int32_t successes = 0;

  /// sup |empirical - closed form| over rows with i >= 2.
  double sup_error(std::int32_t i_min = 2) const;
};

/// Runs UCP on `runs` formulas with m = round(c n) clauses (formula r uses
/// seed derive_seed(base_seed, r)) and averages the census at the grid times.
EmpiricalTrajectory empirical_trajectory(std::int32_t n, const LiquidParams &params,
                                         std::int32_t runs, std::uint64_t base_seed,
                                         const std::vector<double> &grid,
                                         const UcpOptions &options = {}, unsigned threads = 0);

} // namespace bksat::liquid
