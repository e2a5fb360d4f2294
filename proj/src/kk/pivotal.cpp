#include <cmath>
#include <limits>

#include "bksat/dpll.hpp"
#include "bksat/kk.hpp"
#include "bksat/parallel.hpp"
#include "bksat/rng.hpp"
#include "bksat/solvers.hpp"

namespace bksat::kk {
namespace {

struct TrialResult {
  bool sat = false;
  bool event = false; // Phi and C unsat
  bool event_plus = false;
  bool event_minus = false;
  std::uint32_t spine_checks = 0;
  std::uint32_t spine_violations = 0;
};

Clause with_first_sign(const Clause &c, std::int8_t sign) {
  std::vector<Literal> lits(c.literals().begin(), c.literals().end());
  lits.front().sign = sign;
  return Clause(std::move(lits));
}

// Phi and C is unsatisfiable iff every literal of C is falsified by the value
// its variable is locked to.
bool spine_predicts_unsat(const Clause &c, const SpineReport &spine) {
  auto locked = [&](std::int32_t v) -> int {
    for (auto x : spine.s_plus)
      if (x == v)
        return 1;
    for (auto x : spine.s_minus)
      if (x == v)
        return -1;
    return 0;
  };
  for (const auto &lit : c.literals()) {
    const int value = locked(lit.var);
    if (value == 0 || value == lit.sign)
      return false;
  }
  return true;
}

TrialResult run_trial(const PivotalConfig &cfg, std::uint64_t index) {
  Rng rng(derive_seed(cfg.base_seed, index));
  auto phi = sample_formula(cfg.n, cfg.k, cfg.bias, cfg.t * cfg.n, SampleMode::poisson, rng);
  auto c = sample_clause(cfg.n, cfg.k, cfg.bias, rng);
  const Clause plus = with_first_sign(c, 1);
  const Clause minus = with_first_sign(c, -1);

  TrialResult r;
  DpllSolver solver(phi.view(), cfg.n);
  auto witness = solver.solve();
  if (!witness)
    return r;
  r.sat = true;
  const auto base = solver.num_clauses();
  auto unsat_with = [&](const Clause &extra) {
    if (clause_satisfied(extra, *witness))
      return false;
    solver.add_clause(extra);
    const bool unsat = !solver.solve();
    solver.truncate(base);
    return unsat;
  };
  r.event_plus = unsat_with(plus);
  r.event_minus = unsat_with(minus);
  r.event = c[0].sign > 0 ? r.event_plus : r.event_minus;

  const bool full = index < cfg.full_spine_checks;
  if (full || r.event_plus || r.event_minus) {
    auto spine = spine_set(solver, *witness);
    for (const auto *extra : {&plus, &minus}) {
      const bool actual = extra == &plus ? r.event_plus : r.event_minus;
      if (!full && !actual)
        continue;
      ++r.spine_checks;
      if (spine_predicts_unsat(*extra, spine) != actual)
        ++r.spine_violations;
    }
  }
  return r;
}

} // namespace

PivotalEstimates pivotal_rho_estimate(const PivotalConfig &cfg) {
  if (cfg.k < 1 || cfg.n < cfg.k)
    throw InvalidParameters("need 1 <= k <= n");
  if (cfg.n > kDpllDefaultLimit)
    throw LimitExceeded("pivotal estimates need n within the DPLL limit");
  if (!(cfg.t >= 0.0))
    throw InvalidParameters("t must be non-negative");
  if (cfg.trials == 0)
    throw InvalidParameters("trials must be positive");

  auto results = parallel_map(
      cfg.trials, [&](std::size_t i) { return run_trial(cfg, i); }, cfg.threads);

  PivotalEstimates out;
  out.config = cfg;
  const double p = cfg.bias.p();
  for (const auto &r : results) {
    out.sat += r.sat;
    out.events += r.event;
    out.events_plus += r.event_plus;
    out.events_minus += r.event_minus;
    out.spine_checks += r.spine_checks;
    out.spine_violations += r.spine_violations;
  }
  const double T = static_cast<double>(cfg.trials);
  out.rho = static_cast<double>(out.events) / T;
  out.rho_plus = static_cast<double>(out.events_plus) / T;
  out.rho_minus = static_cast<double>(out.events_minus) / T;
  out.rho_ci = wilson_interval(out.events, cfg.trials);
  out.rho_plus_ci = wilson_interval(out.events_plus, cfg.trials);
  out.rho_minus_ci = wilson_interval(out.events_minus, cfg.trials);

  RunningMoments identity, swapped, linearised;
  const double ratio = out.events > 0 ? (out.rho_plus - out.rho_minus) / out.rho : 0.0;
  for (const auto &r : results) {
    const double x = r.event_plus, y = r.event_minus, z = r.event;
    identity.add(z - p * x - (1.0 - p) * y);
    swapped.add(z - (1.0 - p) * x - p * y);
    linearised.add(x - y - ratio * z);
  }
  constexpr double z95 = 1.96;
  auto im = identity.result(), sm = swapped.result(), lm = linearised.result();
  out.identity_residual = im.mean;
  out.identity_half_width = z95 * im.standard_error();
  out.swapped_identity_residual = sm.mean;
  out.swapped_identity_half_width = z95 * sm.standard_error();
  out.ratio = ratio;
  out.ratio_half_width = out.events > 0 ? z95 * lm.standard_error() / out.rho
                                        : std::numeric_limits<double>::infinity();
  return out;
}

} // namespace bksat::kk
