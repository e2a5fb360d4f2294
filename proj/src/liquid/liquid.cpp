#include "bksat/liquid.hpp"

#include <cmath>

#include "bksat/parallel.hpp"
#include "bksat/rng.hpp"

namespace bksat::liquid {
namespace {

double binom(std::int32_t n, std::int32_t k) {
  double c = 1.0;
  for (std::int32_t j = 0; j < k; ++j)
    c = c * (n - j) / (j + 1);
  return c;
}

void check_params(const LiquidParams &p) {
  if (p.k < 2)
    throw InvalidParameters("liquid model needs k >= 2");
  if (!(p.c >= 0.0))
    throw InvalidParameters("initial density must be non-negative");
}

} // namespace

double closed_form(std::int32_t i, double t, double c, std::int32_t k, BiasParams bias) {
  if (k < 2 || i < 2 || i > k)
    throw InvalidParameters("closed form needs 2 <= i <= k");
  if (!(t >= 0.0 && t < 1.0))
    throw DomainError("closed form needs 0 <= t < 1");
  return c * binom(k, i) * std::pow(bias.disagreement() * t, k - i) * std::pow(1.0 - t, i);
}

OdeState closed_form_state(const LiquidParams &params, double t) {
  check_params(params);
  OdeState s;
  s.t = t;
  for (std::int32_t i = 2; i <= params.k; ++i)
    s.c.push_back(closed_form(i, t, params.c, params.k, params.bias));
  return s;
}

std::vector<double> ode_rhs(const LiquidParams &params, double t, const std::vector<double> &c) {
  const double d = params.bias.disagreement();
  const double inv = 1.0 / (1.0 - t);
  const auto k = params.k;
  std::vector<double> out(c.size());
  for (std::int32_t i = 2; i <= k; ++i) {
    const auto idx = static_cast<std::size_t>(i - 2);
    double v = -i * inv * c[idx];
    if (i < k)
      v += d * (i + 1) * inv * c[idx + 1];
    out[idx] = v;
  }
  return out;
}

std::vector<OdeState> integrate(const LiquidParams &params, double t_end, double step,
                                double guard) {
  check_params(params);
  if (!(step > 0.0))
    throw InvalidParameters("step must be positive");
  if (!(t_end >= 0.0))
    throw InvalidParameters("t_end must be non-negative");
  if (t_end > 1.0 - guard + 1e-12)
    throw DomainError("t_end " + format_double(t_end) + " is within " + format_double(guard) +
                      " of the singularity at t = 1");
  std::vector<OdeState> out;
  OdeState s;
  s.c.assign(static_cast<std::size_t>(params.k - 1), 0.0);
  s.c.back() = params.c;
  out.push_back(s);

  auto axpy = [](const std::vector<double> &x, double a, const std::vector<double> &y) {
    std::vector<double> r(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      r[j] = x[j] + a * y[j];
    return r;
  };
  const auto steps = static_cast<std::int64_t>(std::ceil(t_end / step - 1e-9));
  for (std::int64_t j = 1; j <= steps; ++j) {
    const double t = s.t;
    const double t_next = j == steps ? t_end : static_cast<double>(j) * step;
    const double h = t_next - t;
    auto k1 = ode_rhs(params, t, s.c);
    auto k2 = ode_rhs(params, t + h / 2, axpy(s.c, h / 2, k1));
    auto k3 = ode_rhs(params, t + h / 2, axpy(s.c, h / 2, k2));
    auto k4 = ode_rhs(params, t + h, axpy(s.c, h, k3));
    for (std::size_t q = 0; q < s.c.size(); ++q)
      s.c[q] += h / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
    s.t = t_next;
    out.push_back(s);
  }
  return out;
}

double max_deviation(const LiquidParams &params, const std::vector<OdeState> &trajectory) {
  double worst = 0.0;
  for (const auto &s : trajectory)
    for (std::int32_t i = 2; i <= params.k; ++i)
      worst = std::max(worst, std::fabs(s.at(i) - closed_form(i, s.t, params.c, params.k,
                                                               params.bias)));
  return worst;
}

double EmpiricalTrajectory::sup_error(std::int32_t i_min) const {
  double worst = 0.0;
  for (const auto &r : rows)
    if (r.i >= i_min)
      worst = std::max(worst, std::fabs(r.empirical - r.closed_form));
  return worst;
}

EmpiricalTrajectory empirical_trajectory(std::int32_t n, const LiquidParams &params,
                                         std::int32_t runs, std::uint64_t base_seed,
                                         const std::vector<double> &grid,
                                         const UcpOptions &options, unsigned threads) {
  check_params(params);
  if (n < 1 || runs < 1)
    throw InvalidParameters("need n >= 1 and runs >= 1");
  for (double t : grid)
    if (!(t >= 0.0 && t < 1.0))
      throw DomainError("grid times must lie in [0, 1)");
  const auto k = params.k;
  const auto width = static_cast<std::size_t>(k + 1);
  const auto m = static_cast<std::int64_t>(std::llround(params.c * n));

  struct RunResult {
    std::vector<double> census; // grid x (k+1), S_i / n
    std::int64_t violations = 0;
    bool success = false;
  };
  UcpOptions opts = options;
  opts.record_trajectory = true;
  auto results = parallel_map(
      static_cast<std::size_t>(runs),
      [&](std::size_t r) {
        Rng rng(derive_seed(base_seed, r));
        auto f = sample_formula(n, k, params.bias, static_cast<double>(m), SampleMode::discrete,
                                rng);
        auto outcome = ucp_run(f, params.bias, rng, opts);
        RunResult res;
        res.success = outcome.success;
        const auto &tr = outcome.trajectory;
        for (std::size_t j = 0; j < tr.steps(); ++j) {
          std::int64_t total = tr.satisfied(j);
          for (auto s : tr.counts(j))
            total += s;
          if (total != m)
            ++res.violations;
        }
        for (double t : grid) {
          auto j = static_cast<std::size_t>(std::floor(t * n));
          auto counts = tr.counts(j);
          for (std::size_t i = 0; i < width; ++i)
            res.census.push_back(i < counts.size() ? static_cast<double>(counts[i]) / n : 0.0);
        }
        return res;
      },
      threads);

  EmpiricalTrajectory out;
  out.n = n;
  out.m = m;
  out.runs = runs;
  for (std::size_t g = 0; g < grid.size(); ++g)
    for (std::size_t i = 0; i < width; ++i) {
      double sum = 0.0, sum2 = 0.0;
      for (const auto &res : results) {
        double v = res.census[g * width + i];
        sum += v;
        sum2 += v * v;
      }
      EmpiricalRow row;
      row.t = grid[g];
      row.i = static_cast<std::int32_t>(i);
      row.empirical = sum / runs;
      row.stddev = runs > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / runs) / (runs - 1)))
                            : 0.0;
      row.closed_form = row.i >= 2 ? closed_form(row.i, row.t, params.c, k, params.bias) : 0.0;
      out.rows.push_back(row);
    }
  for (const auto &res : results) {
    out.conservation_violations += res.violations;
    out.successes += res.success ? 1 : 0;
  }
  return out;
}

} // namespace bksat::liquid
