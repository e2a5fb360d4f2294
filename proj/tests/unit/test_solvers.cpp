#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bksat/bounds.hpp"
#include "bksat/dpll.hpp"
#include "bksat/solvers.hpp"
#include "bksat/stats.hpp"
#include "bksat/ucp.hpp"
#include "oracles.hpp"

using namespace bksat;

namespace {

Formula random_ksat(std::int32_t n, std::int32_t k, double density, double p, std::uint64_t seed) {
  return generate_formula(n, k, BiasParams::from_p(p), density * n, SampleMode::discrete, seed);
}

std::vector<Clause> all_sign_patterns(std::int32_t k) {
  std::vector<Clause> out;
  for (int s = 0; s < (1 << k); ++s) {
    std::vector<Literal> lits;
    for (int v = 0; v < k; ++v)
      lits.push_back({v + 1, static_cast<std::int8_t>((s >> v & 1) ? 1 : -1)});
    out.emplace_back(lits);
  }
  return out;
}

} // namespace

// DPLL ------------------------------------------------------------------------

TEST_CASE("dpll small cases") {
  CHECK(dpll_sat(CnfView{5, {}}).has_value());
  auto all8 = all_sign_patterns(3);
  CHECK_FALSE(dpll_sat(CnfView{3, all8}).has_value());
  all8.pop_back();
  auto model = dpll_sat(CnfView{3, all8});
  REQUIRE(model);
  CHECK(eval(CnfView{3, all8}, *model).satisfied());
  std::vector<Clause> too_big{Clause::of({61})};
  CHECK_THROWS_AS(dpll_sat(CnfView{61, too_big}), LimitExceeded);
}

TEST_CASE("brute force counts on hand examples") {
  auto empty = brute_force_sat(CnfView{3, {}});
  CHECK(empty.Z == std::vector<std::uint64_t>{1, 3, 3, 1});
  CHECK(empty.M == std::vector<std::uint64_t>{1, 0, 0, 0});

  std::vector<Clause> one{Clause::of({1, 2})};
  auto c = brute_force_sat(CnfView{2, one});
  CHECK(c.Z == std::vector<std::uint64_t>{0, 2, 1});
  CHECK(c.M == std::vector<std::uint64_t>{0, 2, 0});
}

TEST_CASE("brute force agrees with naive enumeration") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(derive_seed(21, s));
    const auto n = 1 + static_cast<std::int32_t>(rng.below(10));
    auto cs = oracle::random_clauses(n, 3, rng.below(3 * static_cast<std::uint64_t>(n) + 1), rng);
    CnfView f{n, cs};
    auto sols = oracle::solutions(f);
    std::vector<std::uint64_t> Z(static_cast<std::size_t>(n) + 1, 0), M(Z);
    for (auto mask : sols) {
      const auto layer = static_cast<std::size_t>(__builtin_popcountll(mask));
      ++Z[layer];
      bool minimal = true;
      for (std::int32_t v = 0; v < n; ++v)
        if ((mask >> v & 1) && oracle::satisfies(f, mask & ~(std::uint64_t{1} << v)))
          minimal = false;
      M[layer] += minimal;
    }
    auto counts = brute_force_sat(f);
    CHECK(counts.Z == Z);
    CHECK(counts.M == M);
    std::vector<std::uint64_t> visited;
    for_each_solution(f, [&](std::uint64_t mask) { visited.push_back(mask); });
    std::sort(visited.begin(), visited.end());
    CHECK(visited == sols);
  }
}

TEST_CASE("locally minimal solutions exist iff solutions exist") {
  for (std::uint64_t s = 0; s < 10000; ++s) {
    auto f = random_ksat(10, 3, 3.0 + static_cast<double>(s % 40) / 10.0, 0.3, s);
    auto c = brute_force_sat(f);
    for (std::size_t i = 0; i < c.Z.size(); ++i)
      CHECK(c.M[i] <= c.Z[i]);
    CHECK((c.total() > 0) == (c.total_minimal() > 0));
  }
}

TEST_CASE("dpll agrees with brute force on random formulas") {
  std::size_t sat = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    Rng rng(derive_seed(31, s));
    const auto n = 1 + static_cast<std::int32_t>(rng.below(16));
    std::vector<Clause> cs;
    if (s % 2 == 0) {
      cs = oracle::random_clauses(n, 4, rng.below(5 * static_cast<std::uint64_t>(n) + 1), rng);
    } else {
      const auto k = std::min<std::int32_t>(n, 3);
      cs = random_ksat(n, k, static_cast<double>(rng.below(60)) / 10.0, 0.5, s).clauses;
    }
    CnfView f{n, cs};
    auto model = dpll_sat(f);
    const bool expected = brute_force_sat(f).satisfiable();
    CHECK(model.has_value() == expected);
    if (model) {
      ++sat;
      CHECK(eval(f, *model).satisfied());
    }
  }
  CHECK(sat > 1000);
  CHECK(sat < 9000);
}

TEST_CASE("dpll assumptions and clause stack") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto f = random_ksat(12, 3, 3.5, 0.5, s);
    DpllSolver solver(f);
    auto sols = oracle::solutions(f);
    for (std::int32_t v = 1; v <= 12; v += 5) {
      for (std::int8_t sign : {1, -1}) {
        const Literal lit{v, sign};
        const bool expected = std::any_of(sols.begin(), sols.end(), [&](std::uint64_t m) {
          return oracle::literal_true(lit, m);
        });
        auto model = solver.solve(std::span<const Literal>(&lit, 1));
        CHECK(model.has_value() == expected);
        if (model)
          CHECK(model->at(v) == sign);
      }
    }
    const auto base = solver.num_clauses();
    const auto extra = Clause::of({1, -2, 3});
    solver.add_clause(extra);
    const bool with_extra = std::any_of(sols.begin(), sols.end(), [&](std::uint64_t m) {
      return oracle::clause_true(extra, m);
    });
    CHECK(solver.solve().has_value() == with_extra);
    solver.truncate(base);
    CHECK(solver.solve().has_value() == !sols.empty());
  }
}

// 2-SAT ------------------------------------------------------------------------

TEST_CASE("two_sat small cases") {
  std::vector<Clause> a{Clause::of({1, 2}), Clause::of({-1, 2})};
  auto model = two_sat_solve(CnfView{2, a});
  REQUIRE(model);
  CHECK(model->at(2) == 1);
  std::vector<Clause> b{Clause::of({1, 2}), Clause::of({-1, 2}), Clause::of({1, -2}),
                        Clause::of({-1, -2})};
  CHECK_FALSE(two_sat_solve(CnfView{2, b}).has_value());
  std::vector<Clause> units{Clause::of({1}), Clause::of({-1, 2}), Clause::of({-2, 3})};
  auto forced = two_sat_solve(CnfView{3, units});
  REQUIRE(forced);
  CHECK(forced->at(3) == 1);
  std::vector<Clause> wide{Clause::of({1, 2, 3})};
  CHECK_THROWS_AS(two_sat_solve(CnfView{3, wide}), InvalidParameters);
  CHECK(two_sat_solve(CnfView{4, {}}).has_value());
}

TEST_CASE("two_sat agrees with dpll on random 2-SAT") {
  std::size_t sat = 0;
  for (std::uint64_t s = 0; s < 100000; ++s) {
    Rng rng(derive_seed(41, s));
    const auto m = 10 + rng.below(40);
    auto f = sample_formula(30, 2, BiasParams::from_p(0.5), static_cast<double>(m),
                            SampleMode::discrete, rng);
    if (s % 10 == 0)
      f.clauses.push_back(Clause::of({static_cast<int>(1 + rng.below(30))}));
    auto a = two_sat_solve(CnfView{30, f.clauses});
    auto b = dpll_sat(CnfView{30, f.clauses});
    CHECK(a.has_value() == b.has_value());
    if (a) {
      ++sat;
      CHECK(eval(CnfView{30, f.clauses}, *a).satisfied());
    }
  }
  CHECK(sat > 10000);
  CHECK(sat < 90000);
}

// Spine ---------------------------------------------------------------------------

TEST_CASE("spine small cases") {
  std::vector<Clause> cs{Clause::of({1}), Clause::of({-1, 2})};
  auto s = spine_set(CnfView{2, cs});
  CHECK(s.s_plus == std::vector<std::int32_t>{1, 2});
  CHECK(s.s_minus.empty());
  auto e = spine_set(CnfView{4, {}});
  CHECK(e.size() == 0);
  auto all8 = all_sign_patterns(3);
  CHECK_THROWS_AS(spine_set(CnfView{3, all8}), InvalidParameters);
}

TEST_CASE("spine equals the intersection of all solutions") {
  std::size_t checked = 0, nonempty = 0;
  for (std::uint64_t s = 0; checked < 1000; ++s) {
    Rng rng(derive_seed(51, s));
    const auto n = 5 + static_cast<std::int32_t>(rng.below(11));
    auto f = sample_formula(n, 3, BiasParams::from_p(0.3 + 0.1 * static_cast<double>(s % 3)),
                            (2.0 + static_cast<double>(rng.below(30)) / 10.0) * n,
                            SampleMode::discrete, rng);
    auto sols = oracle::solutions(f);
    if (sols.empty())
      continue;
    ++checked;
    std::uint64_t all_true = ~std::uint64_t{0}, all_false = ~std::uint64_t{0};
    for (auto m : sols) {
      all_true &= m;
      all_false &= ~m;
    }
    std::vector<std::int32_t> plus, minus;
    for (std::int32_t v = 1; v <= n; ++v) {
      if (all_true >> (v - 1) & 1)
        plus.push_back(v);
      if (all_false >> (v - 1) & 1)
        minus.push_back(v);
    }
    auto spine = spine_set(f);
    CHECK(spine.s_plus == plus);
    CHECK(spine.s_minus == minus);
    nonempty += spine.size() > 0;
  }
  CHECK(nonempty > 100);
}

// UCP ---------------------------------------------------------------------------

TEST_CASE("ucp on hand examples") {
  std::vector<Clause> one{Clause::of({1, 2, 3})};
  std::vector<Clause> contradiction{Clause::of({1}), Clause::of({-1})};
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    auto ok = ucp_run(CnfView{3, one}, BiasParams::from_p(0.5), rng);
    CHECK(ok.success);
    auto bad = ucp_run(CnfView{1, contradiction}, BiasParams::from_p(0.5), rng);
    CHECK_FALSE(bad.success);
    CHECK(bad.first_failure_step.has_value());
  }
}

TEST_CASE("ucp success implies a satisfying assignment; trajectory is conserved") {
  std::size_t successes = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(derive_seed(61, s));
    const std::int32_t n = 200;
    const double density = 0.2 + static_cast<double>(s % 10) * 0.15;
    auto f = sample_formula(n, 3, BiasParams::from_p(0.4), density * n, SampleMode::discrete, rng);
    auto out = ucp_run(f, f.bias, rng);
    CHECK(out.assignment.size() == static_cast<std::size_t>(n));
    CHECK(eval(f, out.assignment).satisfied() == out.success);
    successes += out.success;
    const auto &tr = out.trajectory;
    CHECK(tr.steps() == static_cast<std::size_t>(n) + 1);
    CHECK(tr.count(0, 3) == static_cast<std::int64_t>(f.size()));
    for (std::size_t j = 0; j < tr.steps(); ++j) {
      std::int64_t total = tr.satisfied(j);
      for (auto c : tr.counts(j)) {
        CHECK(c >= 0);
        total += c;
      }
      CHECK(total == static_cast<std::int64_t>(f.size()));
    }
    CHECK(out.unit_steps + out.free_steps <= n);
  }
  CHECK(successes > 30);
}

TEST_CASE("ucp free steps follow the policy") {
  const std::int32_t n = 20000;
  for (double p : {0.3, 0.5, 0.8}) {
    Rng rng(7);
    UcpOptions opts;
    auto out = ucp_run(CnfView{n, {}}, BiasParams::from_p(p), rng, opts);
    const double false_fraction = 1.0 - static_cast<double>(out.assignment.layer()) / n;
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(false_fraction - p) < 4 * sigma);
    opts.policy = FreeStepPolicy::sign_matched;
    auto matched = ucp_run(CnfView{n, {}}, BiasParams::from_p(p), rng, opts);
    const double true_fraction = static_cast<double>(matched.assignment.layer()) / n;
    CHECK(std::abs(true_fraction - p) < 4 * sigma);
  }
}

TEST_CASE("ucp is deterministic given the stream") {
  auto f = random_ksat(500, 3, 1.0, 0.4, 3);
  Rng a(9), b(9);
  auto x = ucp_run(f, f.bias, a), y = ucp_run(f, f.bias, b);
  CHECK(x.assignment == y.assignment);
  CHECK(x.success == y.success);
}

TEST_CASE("ucp occurring-only policy leaves absent variables to the final fill") {
  std::vector<Clause> cs{Clause::of({1, 2})};
  Rng rng(3);
  UcpOptions opts;
  opts.occurring_only = true;
  auto out = ucp_run(CnfView{50, cs}, BiasParams::from_p(0.5), rng, opts);
  CHECK(out.success);
  CHECK(out.free_steps + out.unit_steps <= 2);
}

TEST_CASE("ucp succeeds often below the bound") {
  std::size_t successes = 0;
  const int runs = 100;
  for (int r = 0; r < runs; ++r) {
    Rng rng(derive_seed(71, static_cast<std::uint64_t>(r)));
    auto f = sample_formula(2000, 3, BiasParams::from_p(0.5), 0.4 * 2000, SampleMode::discrete, rng);
    successes += ucp_run(f, f.bias, rng).success;
  }
  CHECK(successes >= 10);
}

// Degree statistics and sparsity ---------------------------------------------------

TEST_CASE("degree statistics") {
  std::vector<Clause> cs{Clause::of({1, 2}), Clause::of({-1, 2})};
  auto d = degree_stats(CnfView{2, cs});
  CHECK(d.D1 == 4);
  CHECK(d.D2 == 1);
  CHECK(d.ratio() == doctest::Approx(0.5));
  CHECK(d.d_plus == std::vector<std::int64_t>{1, 2});
  CHECK(d.d_minus == std::vector<std::int64_t>{1, 0});
  auto e = degree_stats(CnfView{3, {}});
  CHECK(e.D1 == 0);
  CHECK(e.D2 == 0);
}

TEST_CASE("expected D2 for biased 2-clauses") {
  const std::int32_t n = 10000;
  const double m = n, p = 0.3;
  const int samples = 300;
  RunningMoments d2;
  for (int s = 0; s < samples; ++s) {
    auto f = random_ksat(n, 2, 1.0, p, derive_seed(81, static_cast<std::uint64_t>(s)));
    auto d = degree_stats(f);
    CHECK(d.D1 == 2 * static_cast<std::int64_t>(f.size()));
    d2.add(static_cast<double>(d.D2));
  }
  // Exact mean: each ordered pair of distinct clauses contributes 4p(1-p)/n.
  const double expected = 4 * p * (1 - p) * m * (m - 1) / n;
  auto r = d2.result();
  CHECK(std::abs(r.mean - expected) <= 3 * r.standard_error());
}

TEST_CASE("sparsity check") {
  Hypergraph empty{6, {}};
  CHECK(sparsity_check(empty, 0.5, 1.0).sparse);

  Hypergraph multi{6, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}}};
  auto r = sparsity_check(multi, 0.5, 1.0);
  CHECK_FALSE(r.sparse);
  CHECK(r.witness == std::vector<std::int32_t>{1, 2, 3});
  CHECK(r.witness_edges == 4);
  CHECK_THROWS_AS(sparsity_check(Hypergraph{23, {}}, 0.5, 1.0), LimitExceeded);

  auto f = generate_formula(5, 3, BiasParams::from_p(0.5), 4, SampleMode::discrete, 1);
  auto h = hypergraph_of(f);
  CHECK(h.n == 5);
  CHECK(h.edges.size() == 4);

  const double x = bounds::cs_x(3, 1.0, 1.0);
  int sparse = 0;
  for (std::uint64_t s = 0; s < 100; ++s)
    sparse += sparsity_check(hypergraph_of(random_ksat(18, 3, 1.0, 0.5, s)), x, 1.0).sparse;
  CHECK(sparse >= 95);
}
