#include <doctest.h>

#include <cmath>

#include "bksat/liquid.hpp"

using namespace bksat;
using namespace bksat::liquid;

TEST_CASE("closed form values") {
  CHECK(closed_form(2, 0.5, 1.0, 3, BiasParams::from_p(0.5)) == doctest::Approx(0.1875));
  auto s0 = closed_form_state(LiquidParams{4, BiasParams::from_p(0.3), 2.0}, 0.0);
  CHECK(s0.at(2) == 0.0);
  CHECK(s0.at(3) == 0.0);
  CHECK(s0.at(4) == 2.0);
  // Binomial-sum bound.
  for (double p : {0.2, 0.5})
    for (int j = 0; j < 10; ++j) {
      const double t = j / 10.0, c = 1.3;
      const auto bias = BiasParams::from_p(p);
      double sum = 0;
      for (int i = 2; i <= 5; ++i)
        sum += closed_form(i, t, c, 5, bias);
      CHECK(sum <= c * std::pow(bias.disagreement() * t + 1 - t, 5) + 1e-15);
    }
}

TEST_CASE("closed form solves the density system") {
  for (std::int32_t k : {3, 4, 6})
    for (double p : {0.1, 0.35, 0.5}) {
      LiquidParams params{k, BiasParams::from_p(p), 0.8};
      const double h = 1e-4;
      for (double t : {0.05, 0.3, 0.6, 0.85}) {
        auto lo = closed_form_state(params, t - h), hi = closed_form_state(params, t + h);
        auto rhs = ode_rhs(params, t, closed_form_state(params, t).c);
        for (std::size_t i = 0; i < rhs.size(); ++i)
          CHECK(std::abs((hi.c[i] - lo.c[i]) / (2 * h) - rhs[i]) <= 1e-6);
      }
    }
}

TEST_CASE("RK4 integration tracks the closed form") {
  LiquidParams params{3, BiasParams::from_p(0.5), 1.0};
  auto traj = integrate(params, 0.9, 1e-3);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.back().t == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(max_deviation(params, traj) <= 1e-6);

  for (std::int32_t k : {3, 5})
    for (double p : {0.2, 0.45}) {
      LiquidParams q{k, BiasParams::from_p(p), 2.0};
      CHECK(max_deviation(q, integrate(q, 0.9, 1e-3)) <= 1e-6);
    }
  CHECK_THROWS_AS(integrate(params, 0.97, 1e-3), DomainError);
  CHECK_NOTHROW(integrate(params, 0.97, 1e-3, 0.01));
}

TEST_CASE("step halving shows fourth-order convergence") {
  LiquidParams params{4, BiasParams::from_p(0.3), 1.0};
  const double coarse = max_deviation(params, integrate(params, 0.9, 0.01));
  const double fine = max_deviation(params, integrate(params, 0.9, 0.005));
  CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("no sign disagreement decouples the system") {
  for (double p : {0.0, 1.0}) {
    LiquidParams params{3, BiasParams::from_p(p), 1.5};
    for (const auto &s : integrate(params, 0.9, 1e-3)) {
      CHECK(s.at(2) == 0.0);
      CHECK(s.at(3) == doctest::Approx(1.5 * std::pow(1 - s.t, 3)).epsilon(1e-9));
    }
  }
}

TEST_CASE("empirical trajectory basics") {
  LiquidParams params{3, BiasParams::from_p(0.5), 0.4};
  std::vector<double> grid{0.0, 0.2, 0.5, 0.8};
  auto emp = empirical_trajectory(20000, params, 8, 5, grid);
  CHECK(emp.m == 8000);
  CHECK(emp.conservation_violations == 0);
  REQUIRE(emp.rows.size() == grid.size() * 4);
  // t = 0 row is (0, 0, 0, c) exactly.
  for (int i = 0; i < 3; ++i)
    CHECK(emp.rows[static_cast<std::size_t>(i)].empirical == 0.0);
  CHECK(emp.rows[3].empirical == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(emp.sup_error() < 0.02);

  auto again = empirical_trajectory(20000, params, 8, 5, grid, {}, 1);
  for (std::size_t r = 0; r < emp.rows.size(); ++r)
    CHECK(again.rows[r].empirical == emp.rows[r].empirical);
}

TEST_CASE("fluctuations shrink like n^-1/2") {
  LiquidParams params{3, BiasParams::from_p(0.5), 0.4};
  std::vector<double> grid{0.5};
  auto small = empirical_trajectory(5000, params, 80, 1, grid);
  auto large = empirical_trajectory(20000, params, 80, 2, grid);
  const double ratio = small.rows[2].stddev / large.rows[2].stddev; // row i = 2
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("two-clause density stays below the barrier under the UCP bound") {
  LiquidParams params{3, BiasParams::from_p(0.4), 0.35};
  std::vector<double> grid;
  for (int j = 0; j <= 18; ++j)
    grid.push_back(j * 0.05);
  auto emp = empirical_trajectory(100000, params, 2, 3, grid);
  const double pq4 = 2 * params.bias.disagreement();
  for (const auto &row : emp.rows)
    if (row.i == 2)
      CHECK(row.empirical < (1 - row.t) / pq4);
}
