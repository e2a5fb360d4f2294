#include "bksat/harness.hpp"

#include <algorithm>
#include <cmath>

#include "bksat/bounds.hpp"
#include "bksat/dpll.hpp"
#include "bksat/parallel.hpp"
#include "bksat/rng.hpp"
#include "bksat/solvers.hpp"

namespace bksat::harness {

std::string_view to_string(SolverKind s) noexcept {
  switch (s) {
  case SolverKind::dpll:
    return "dpll";
  case SolverKind::two_sat:
    return "two_sat";
  case SolverKind::ucp:
    return "ucp";
  }
  return "dpll";
}

SolverKind parse_solver(std::string_view text) {
  if (text == "dpll")
    return SolverKind::dpll;
  if (text == "two_sat" || text == "2sat")
    return SolverKind::two_sat;
  if (text == "ucp")
    return SolverKind::ucp;
  throw InvalidParameters("unknown solver '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (k < 1 || n < k)
    throw InvalidParameters("need 1 <= k <= n");
  if (trials == 0)
    throw InvalidParameters("trials must be positive");
  if (!(tolerance > 0.0))
    throw InvalidParameters("bisection tolerance must be positive");
  if (solver == SolverKind::two_sat && k != 2)
    throw InvalidParameters("the two_sat solver needs k = 2");
  if (solver == SolverKind::dpll && n > kDpllDefaultLimit)
    throw InvalidParameters("dpll handles n <= " + std::to_string(kDpllDefaultLimit));
  if (solver == SolverKind::two_sat && n > 1'000'000)
    throw InvalidParameters("two_sat handles n <= 1000000");
  if (lo && hi && !(*lo < *hi))
    throw InvalidParameters("bracket needs lo < hi");
  if ((lo && *lo < 0.0) || !(t >= 0.0))
    throw InvalidParameters("densities must be non-negative");
}

bool solve_instance(const Formula &f, SolverKind solver, FreeStepPolicy policy, Rng &rng) {
  switch (solver) {
  case SolverKind::dpll:
    return dpll_sat(f.view(), kDpllDefaultLimit).has_value();
  case SolverKind::two_sat:
    return two_sat_solve(f.view()).has_value();
  case SolverKind::ucp: {
    UcpOptions opts;
    opts.policy = policy;
    opts.record_trajectory = false;
    return ucp_run(f.view(), f.bias, rng, opts).success;
  }
  }
  return false;
}

SatPoint sat_probability(const ExperimentConfig &cfg, double density) {
  if (!(density >= 0.0))
    throw InvalidParameters("density must be non-negative");
  const double m = density * cfg.n;
  auto sat = parallel_map(
      cfg.trials,
      [&](std::size_t i) -> std::uint8_t {
        Rng rng(derive_seed(cfg.base_seed, i));
        auto f = sample_formula(cfg.n, cfg.k, cfg.bias, m, cfg.mode, rng);
        return solve_instance(f, cfg.solver, cfg.policy, rng) ? 1 : 0;
      },
      cfg.threads);
  SatPoint pt;
  pt.density = density;
  pt.trials = cfg.trials;
  for (auto s : sat)
    pt.sat += s;
  return pt;
}

std::vector<double> isotonic_nonincreasing(const std::vector<double> &values,
                                           const std::vector<double> &weights) {
  if (values.size() != weights.size())
    throw InvalidParameters("values and weights differ in length");
  struct Block {
    double mean, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < values.size(); ++i) {
    blocks.push_back({values[i], weights[i], 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean < blocks.back().mean) {
      auto top = blocks.back();
      blocks.pop_back();
      auto &prev = blocks.back();
      const double w = prev.weight + top.weight;
      prev.mean = w > 0 ? (prev.mean * prev.weight + top.mean * top.weight) / w
                        : 0.5 * (prev.mean + top.mean);
      prev.weight = w;
      prev.count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto &b : blocks)
    out.insert(out.end(), b.count, b.mean);
  return out;
}

namespace {

std::vector<double> fit(const std::vector<SatPoint> &points) {
  std::vector<double> v, w;
  for (const auto &p : points) {
    v.push_back(p.frequency());
    w.push_back(static_cast<double>(p.trials));
  }
  return isotonic_nonincreasing(v, w);
}

} // namespace

SatCurve sat_curve(const ExperimentConfig &cfg, std::vector<double> densities) {
  cfg.validate();
  if (!std::is_sorted(densities.begin(), densities.end()))
    throw InvalidParameters("density grid must be sorted");
  SatCurve out;
  for (double d : densities)
    out.points.push_back(sat_probability(cfg, d));
  out.fitted = fit(out.points);
  return out;
}

std::pair<double, double> default_bracket(std::int32_t k, BiasParams bias) {
  // The model is symmetric under flipping every sign, so bounds use p <= 1/2.
  const auto b = BiasParams::from_p(std::min(bias.p(), 1.0 - bias.p()));
  if (b.p() <= 0.0)
    throw InvalidParameters("p in {0, 1} is always satisfiable; no threshold to bracket");
  const double lo = 0.5 * bounds::ucp_bound(k, b);
  const double hi = k <= 2 ? 2.0 * bounds::alpha2(b) : 1.5 * bounds::c_p_maximize(k, b).c_p;
  return {lo, hi};
}

ThresholdEstimate threshold_bisect(const ExperimentConfig &cfg) {
  cfg.validate();
  auto [lo, hi] = [&] {
    if (cfg.lo && cfg.hi)
      return std::pair{*cfg.lo, *cfg.hi};
    auto d = default_bracket(cfg.k, cfg.bias);
    return std::pair{cfg.lo.value_or(d.first), cfg.hi.value_or(d.second)};
  }();
  if (!(lo < hi))
    throw InvalidParameters("bracket needs lo < hi");

  std::vector<SatPoint> table;
  auto probe = [&](double d) {
    table.push_back(sat_probability(cfg, d));
    return table.back().frequency();
  };
  const double f_lo = probe(lo), f_hi = probe(hi);
  if (!(f_lo >= 0.5 && f_hi < 0.5))
    throw InvalidParameters("Pr(sat) does not cross 1/2 inside [" + format_double(lo) + ", " +
                            format_double(hi) + "] (" + format_double(f_lo) + ", " +
                            format_double(f_hi) + "); widen the bracket");
  while (hi - lo > cfg.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (probe(mid) >= 0.5 ? lo : hi) = mid;
  }

  std::sort(table.begin(), table.end(),
            [](const SatPoint &a, const SatPoint &b) { return a.density < b.density; });
  ThresholdEstimate out;
  out.fitted = fit(table);
  out.table = table;
  out.bracket_lo = lo;
  out.bracket_hi = hi;

  const auto &d = table;
  const auto &f = out.fitted;
  std::size_t j = 0;
  while (j < f.size() && f[j] >= 0.5)
    ++j;
  if (j == 0) {
    out.alpha_hat = d.front().density;
  } else if (j == f.size()) {
    out.alpha_hat = d.back().density;
  } else {
    const double x0 = d[j - 1].density, x1 = d[j].density;
    out.alpha_hat = x0 + (f[j - 1] - 0.5) / (f[j - 1] - f[j]) * (x1 - x0);
  }

  // Secant slope of the fitted curve between the nearest probes outside the
  // [1/4, 3/4] band around the crossing.
  std::size_t a = 0, b = f.size() - 1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= 0.75 && d[i].density <= out.alpha_hat)
      a = i;
    if (f[i] <= 0.25 && d[i].density >= out.alpha_hat) {
      b = i;
      break;
    }
  }
  const double slope =
      b > a ? (f[a] - f[b]) / (d[b].density - d[a].density) : 0.0;
  const double se = std::sqrt(0.25 / static_cast<double>(cfg.trials));
  const double half_bracket = 0.5 * (hi - lo);
  out.ci = slope > 0.0 ? 1.96 * se / slope + half_bracket : d.back().density - d.front().density;
  return out;
}

SpineExperiment spine_experiment(const ExperimentConfig &cfg) {
  cfg.validate();
  if (cfg.n > kDpllDefaultLimit)
    throw InvalidParameters("spine experiments need n <= " + std::to_string(kDpllDefaultLimit));
  struct Trial {
    bool sat = false;
    std::int32_t locked_true = 0, locked_false = 0;
  };
  const double m = cfg.t * cfg.n;
  auto trials = parallel_map(
      cfg.trials,
      [&](std::size_t i) {
        Rng rng(derive_seed(cfg.base_seed, i));
        auto f = sample_formula(cfg.n, cfg.k, cfg.bias, m, cfg.mode, rng);
        Trial r;
        DpllSolver solver(f.view(), kDpllDefaultLimit);
        auto witness = solver.solve();
        if (!witness)
          return r;
        r.sat = true;
        auto spine = spine_set(solver, *witness);
        r.locked_true = static_cast<std::int32_t>(spine.s_plus.size());
        r.locked_false = static_cast<std::int32_t>(spine.s_minus.size());
        return r;
      },
      cfg.threads);

  SpineExperiment out;
  out.trials = cfg.trials;
  out.histogram.assign(static_cast<std::size_t>(cfg.n) + 1, 0);
  for (const auto &r : trials) {
    if (!r.sat)
      continue;
    ++out.satisfiable;
    ++out.histogram[static_cast<std::size_t>(r.locked_true + r.locked_false)];
    out.locked_true += static_cast<std::uint64_t>(r.locked_true);
    out.locked_false += static_cast<std::uint64_t>(r.locked_false);
    out.formulas_with_spine += (r.locked_true + r.locked_false) > 0;
  }
  if (out.satisfiable == 0)
    throw InvalidParameters("no satisfiable samples; lower t");
  const double total = static_cast<double>(out.locked_true + out.locked_false);
  if (total == 0.0)
    return out;

  // Ratio estimator over formulas as clusters.
  auto ratio_ci = [&](bool want_true, double r) {
    double ss = 0.0;
    for (const auto &t : trials) {
      if (!t.sat)
        continue;
      const double y = want_true ? t.locked_true : t.locked_false;
      const double e = y - r * (t.locked_true + t.locked_false);
      ss += e * e;
    }
    const double N = static_cast<double>(out.satisfiable);
    if (N < 2)
      return 0.0;
    const double mean_size = total / N;
    return 1.96 * std::sqrt(ss / (N * (N - 1))) / mean_size;
  };
  out.true_fraction = static_cast<double>(out.locked_true) / total;
  out.true_fraction_ci = ratio_ci(true, out.true_fraction);
  const bool aligned_true = cfg.bias.p() >= 0.5;
  out.aligned_fraction = aligned_true ? out.true_fraction : 1.0 - out.true_fraction;
  out.aligned_fraction_ci = out.true_fraction_ci;
  return out;
}

std::vector<ParabolaRow> parabola_experiment(const ExperimentConfig &cfg,
                                             const std::vector<double> &bs) {
  std::vector<ParabolaRow> rows;
  ExperimentConfig c0 = cfg;
  c0.bias = BiasParams::from_b(0.0);
  const auto base = threshold_bisect(c0);
  for (double b : bs) {
    ParabolaRow row;
    row.b = b;
    if (b == 0.0) {
      row.estimate = base;
    } else {
      ExperimentConfig c = cfg;
      c.bias = BiasParams::from_b(b);
      c.lo.reset();
      c.hi.reset();
      row.estimate = threshold_bisect(c);
    }
    const double a = row.estimate.alpha_hat, a0 = base.alpha_hat;
    row.ratio = a / a0;
    row.ratio_ci =
        b == 0.0 ? 0.0
                 : row.ratio * std::hypot(row.estimate.ci / a, base.ci / a0);
    if (cfg.k == 2)
      row.exact = 1.0 / (1.0 - 4.0 * b * b);
    row.lower_bound = 1.0 + 2.0 * cfg.k * b * b;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace bksat::harness
