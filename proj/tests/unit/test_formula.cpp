#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <map>
#include <set>

#include "bksat/formula.hpp"
#include "bksat/parallel.hpp"
#include "bksat/rng.hpp"
#include "bksat/stats.hpp"
#include "oracles.hpp"

using namespace bksat;

namespace {

double chi_square_critical(double df, double alpha = 1e-3) {
  boost::math::chi_squared dist(df);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

} // namespace

TEST_CASE("bias parameters") {
  CHECK(BiasParams::from_p(0.3).b() == doctest::Approx(0.2));
  CHECK(BiasParams::from_b(0.1).p() == doctest::Approx(0.4));
  CHECK(BiasParams::from_p(0.0).p() == 0.0);
  CHECK(BiasParams::from_p(1.0).p() == 1.0);
  CHECK_THROWS_AS(BiasParams::from_p(1.5), InvalidParameters);
  CHECK_THROWS_AS(BiasParams::from_p(-0.1), InvalidParameters);
  CHECK_THROWS_AS(BiasParams::from_p(std::nan("")), InvalidParameters);
  CHECK(BiasParams::from_p(0.25).disagreement() == doctest::Approx(0.375));
}

TEST_CASE("clause canonical form") {
  auto c = Clause::of({3, -1, 2});
  REQUIRE(c.width() == 3);
  CHECK(c[0].var == 1);
  CHECK(c[0].sign == -1);
  CHECK(c[2].var == 3);
  CHECK(c.max_var() == 3);
  CHECK_THROWS_AS(Clause::of({1, -1}), InvalidParameters);
  CHECK_THROWS_AS(Clause::of({0, 2}), InvalidParameters);
}

TEST_CASE("subcube word of a clause") {
  auto w = clause_to_subcube(Clause::of({1, 2, -3}), 5);
  CHECK(w == SubcubeWord({-1, -1, 1, 0, 0}));
  CHECK(w.to_string() == "(-1,-1,1,*,*)");
  CHECK(w.fixed_count() == 3);
  CHECK(subcube_to_clause(w) == Clause::of({1, 2, -3}));
  CHECK_THROWS_AS(subcube_to_clause(SubcubeWord({0, 0})), InvalidParameters);
}

TEST_CASE("subcube membership equals violation, every clause over four variables") {
  const std::int32_t n = 4;
  std::size_t width2 = 0;
  // Every clause: choose a subset of variables and a sign per chosen variable.
  for (int support = 1; support < (1 << n); ++support) {
    const int width = __builtin_popcount(static_cast<unsigned>(support));
    for (int signs = 0; signs < (1 << width); ++signs) {
      std::vector<Literal> lits;
      int s = 0;
      for (int v = 0; v < n; ++v)
        if (support >> v & 1)
          lits.push_back({v + 1, static_cast<std::int8_t>((signs >> s++ & 1) ? 1 : -1)});
      Clause c(lits);
      width2 += width == 2;
      auto w = clause_to_subcube(c, n);
      CHECK(subcube_to_clause(w) == c);
      for (std::uint64_t mask = 0; mask < 16; ++mask) {
        auto a = oracle::to_assignment(mask, n);
        CHECK(w.contains(a) == !oracle::clause_true(c, mask));
        CHECK(clause_satisfied(c, a) == oracle::clause_true(c, mask));
      }
    }
  }
  CHECK(width2 == 24);
}

TEST_CASE("subcube round trip on random clauses") {
  Rng rng(11);
  for (int t = 0; t < 10000; ++t) {
    const auto n = 1 + static_cast<std::int32_t>(rng.below(12));
    auto cs = oracle::random_clauses(n, n, 1, rng);
    auto w = clause_to_subcube(cs[0], n);
    CHECK(subcube_to_clause(w) == cs[0]);
    CHECK(clause_to_subcube(subcube_to_clause(w), n) == w);
  }
}

TEST_CASE("eval") {
  CHECK(eval(CnfView{3, {}}, Assignment(3)).satisfied());
  auto f = Formula::make(1, 1, BiasParams::from_p(0.5), {Clause::of({1})});
  auto r = eval(f, Assignment(1, -1));
  CHECK(r.violated == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(eval(f, Assignment(2)), InvalidParameters);

  auto g = generate_formula(12, 3, BiasParams::from_p(0.5), 30, SampleMode::discrete, 5);
  std::vector<SubcubeWord> words;
  for (const auto &c : g.clauses)
    words.push_back(clause_to_subcube(c, 12));
  for (std::uint64_t mask = 0; mask < 4096; ++mask) {
    auto a = oracle::to_assignment(mask, 12);
    std::vector<std::size_t> expected;
    for (std::size_t j = 0; j < words.size(); ++j)
      if (words[j].contains(a))
        expected.push_back(j);
    CHECK(eval(g, a).violated == expected);
  }
}

TEST_CASE("assignment layer") {
  Assignment a(std::vector<std::int8_t>{1, -1, 1, 1});
  CHECK(a.layer() == 3);
  CHECK_THROWS_AS(Assignment(std::vector<std::int8_t>{1, 0}), InvalidParameters);
}

TEST_CASE("generator basics") {
  Rng rng(1);
  auto c = sample_clause(3, 3, BiasParams::from_p(1.0), rng);
  for (const auto &lit : c.literals())
    CHECK(lit.sign == 1);
  CHECK_THROWS_AS(sample_clause(2, 3, BiasParams::from_p(0.5), rng), InvalidParameters);

  auto empty = generate_formula(5, 3, BiasParams::from_p(0.5), 0, SampleMode::discrete, 1);
  CHECK(empty.size() == 0);
  CHECK(eval(empty, Assignment(5)).satisfied());

  auto f = generate_formula(100, 3, BiasParams::from_p(0.5), 420, SampleMode::discrete, 7);
  CHECK(f.size() == 420);
  CHECK(f.seed == 7);
  CHECK_NOTHROW(f.validate());
  for (const auto &cl : f.clauses)
    CHECK(cl.width() == 3);
  CHECK(generate_formula(100, 3, BiasParams::from_p(0.5), 420, SampleMode::discrete, 7).clauses ==
        f.clauses);
}

TEST_CASE("discrete formulas at the same seed are prefixes of each other") {
  auto small = generate_formula(50, 3, BiasParams::from_p(0.3), 80, SampleMode::discrete, 9);
  auto large = generate_formula(50, 3, BiasParams::from_p(0.3), 200, SampleMode::discrete, 9);
  REQUIRE(large.size() == 200);
  CHECK(std::equal(small.clauses.begin(), small.clauses.end(), large.clauses.begin()));
}

TEST_CASE("Poisson clause counts stay within five standard deviations") {
  const double m = 1e5;
  int inside = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(derive_seed(3, static_cast<std::uint64_t>(s)));
    auto f = sample_formula(10, 2, BiasParams::from_p(0.5), m, SampleMode::poisson, rng);
    inside += std::abs(static_cast<double>(f.size()) - m) <= 5 * std::sqrt(m);
  }
  CHECK(inside >= 0.99 * seeds);
}

TEST_CASE("variable pairs and sign patterns are uniform (chi-square)") {
  const int samples = 1'000'000;
  Rng rng(2024);
  std::map<std::pair<int, int>, int> pairs;
  std::map<int, int> patterns;
  for (int s = 0; s < samples; ++s) {
    auto c = sample_clause(5, 2, BiasParams::from_p(0.5), rng);
    ++pairs[{c[0].var, c[1].var}];
    ++patterns[(c[0].sign > 0) * 2 + (c[1].sign > 0)];
  }
  REQUIRE(pairs.size() == 10);
  REQUIRE(patterns.size() == 4);
  auto chi2 = [&](const auto &counts, double expected) {
    double x = 0;
    for (const auto &[key, count] : counts)
      x += (count - expected) * (count - expected) / expected;
    return x;
  };
  CHECK(chi2(pairs, samples / 10.0) < chi_square_critical(9));
  CHECK(chi2(patterns, samples / 4.0) < chi_square_critical(3));
  const double sigma_pair = std::sqrt(samples * 0.1 * 0.9);
  for (const auto &[key, count] : pairs)
    CHECK(std::abs(count - samples * 0.1) <= 3.5 * sigma_pair);
}

TEST_CASE("positive literal frequency equals p") {
  const int samples = 1'000'000;
  Rng rng(99);
  long positives = 0;
  for (int s = 0; s < samples; ++s) {
    auto c = sample_clause(4, 2, BiasParams::from_p(0.25), rng);
    positives += (c[0].sign > 0) + (c[1].sign > 0);
  }
  const double slots = 2.0 * samples;
  const double sigma = std::sqrt(slots * 0.25 * 0.75);
  CHECK(std::abs(positives - slots * 0.25) <= 3.5 * sigma);
}

TEST_CASE("k-subsets are uniform for k = 3") {
  const int samples = 200'000;
  Rng rng(5);
  std::map<std::vector<int>, int> sets;
  for (int s = 0; s < samples; ++s) {
    auto c = sample_clause(6, 3, BiasParams::from_p(0.5), rng);
    sets[{c[0].var, c[1].var, c[2].var}]++;
  }
  REQUIRE(sets.size() == 20);
  double x = 0;
  for (const auto &[key, count] : sets)
    x += (count - samples / 20.0) * (count - samples / 20.0) / (samples / 20.0);
  CHECK(x < chi_square_critical(19));
}

TEST_CASE("DIMACS format") {
  auto empty = Formula::make(3, 3, BiasParams::from_p(0.5), {});
  auto text = write_dimacs(empty);
  CHECK(text.rfind("c biased-ksat ", 0) == 0);
  CHECK(text.find("\np cnf 3 0\n") != std::string::npos);
  CHECK(text.substr(text.size() - 10) == "p cnf 3 0\n");

  auto f = Formula::make(2, 2, BiasParams::from_p(0.5), {Clause::of({1, -2})});
  CHECK(write_dimacs(f).find("\n1 -2 0\n") != std::string::npos);
}

TEST_CASE("DIMACS round trip is byte identical") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(derive_seed(77, s));
    const auto n = 3 + static_cast<std::int32_t>(rng.below(40));
    const auto k = 1 + static_cast<std::int32_t>(rng.below(3));
    const double p = static_cast<double>(rng.below(101)) / 100.0;
    auto mode = rng.below(2) ? SampleMode::poisson : SampleMode::discrete;
    auto f = sample_formula(n, k, BiasParams::from_p(p), static_cast<double>(rng.below(60)), mode,
                            rng);
    auto text = write_dimacs(f);
    auto g = read_dimacs(text);
    CHECK(g.n == f.n);
    CHECK(g.k == f.k);
    CHECK(g.bias == f.bias);
    CHECK(g.seed == f.seed);
    CHECK(g.mode == f.mode);
    CHECK(g.clauses == f.clauses);
    CHECK(write_dimacs(g) == text);
  }
}

TEST_CASE("plain DIMACS and parse errors") {
  auto f = read_dimacs("c hello\np cnf 4 2\n1 -2 0\n3 4\n0\n");
  CHECK(f.n == 4);
  CHECK(f.k == 2);
  CHECK(f.bias.p() == 0.5);
  CHECK(f.size() == 2);

  auto line_of = [](const char *text) {
    try {
      read_dimacs(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("p cnf 2 1\n1 3 0\n") == 2);       // variable out of range
  CHECK(line_of("p cnf 2 2\n1 2 0\n") == 2);        // too few clauses
  CHECK(line_of("1 2 0\np cnf 2 1\n") == 1);        // data before header
  CHECK(line_of("p cnf 2 1\n1 1 0\n") == 2);        // repeated variable
  CHECK(line_of("p cnf 2 1\n1 x 0\n") == 2);        // bad literal
  CHECK(line_of("p cnf 2 1\n1 2\n") != 0);          // unterminated clause
  CHECK(line_of("p cnf 3 2\n1 2 0\n1 2 3 0\n") == 3); // width mismatch
  CHECK(line_of("c biased-ksat k=2 colour=red\np cnf 2 0\n") == 1);
  CHECK(line_of("p cnf 2 0\np cnf 2 0\n") == 2);
  CHECK(line_of("") != 0);
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 0.45, 1.0 / 3.0, 1e-300, 123456.789, 0.0})
    CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("Wilson interval") {
  // Direct evaluation of the score interval at z = 1.96.
  auto expected = [](double s, double n) {
    const double z = 1.96, ph = s / n, z2 = z * z;
    const double centre = (ph + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return std::pair{centre - half, centre + half};
  };
  for (auto [s, n] : {std::pair{5, 10}, std::pair{0, 20}, std::pair{20, 20}, std::pair{37, 200}}) {
    auto iv = wilson_interval(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(n));
    auto [lo, hi] = expected(s, n);
    CHECK(iv.lo == doctest::Approx(std::max(0.0, lo)).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx(std::min(1.0, hi)).epsilon(1e-12));
  }
}

TEST_CASE("moments agree with the running accumulator") {
  std::vector<double> xs{1, 4, 2, 8, 5, 7};
  auto m = moments(xs);
  RunningMoments r;
  for (double x : xs)
    r.add(x);
  CHECK(m.mean == doctest::Approx(4.5));
  CHECK(m.variance == doctest::Approx(7.5));
  CHECK(r.result().mean == doctest::Approx(m.mean));
  CHECK(r.result().variance == doctest::Approx(m.variance));
}

TEST_CASE("seed derivation and parallel map") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i)
    seeds.insert(derive_seed(1, i));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));

  Rng a(5);
  auto b = a.split(3), c = a.split(3);
  CHECK(b() == c());

  auto task = [](std::size_t i) {
    Rng rng(derive_seed(9, i));
    return rng.below(1000);
  };
  CHECK(parallel_map(200, task, 1) == parallel_map(200, task, 4));
  CHECK_THROWS_AS(parallel_map(
                      10,
                      [](std::size_t i) {
                        if (i == 7)
                          throw DomainError("boom");
                        return 0;
                      },
                      3),
                  DomainError);
}
