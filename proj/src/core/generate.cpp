#include <cmath>

#include "bksat/formula.hpp"
#include "bksat/rng.hpp"

namespace bksat {

Clause sample_clause(std::int32_t n, std::int32_t k, BiasParams bias, Rng &rng) {
  if (k < 1 || k > n)
    throw InvalidParameters("need 1 <= k <= n (k=" + std::to_string(k) +
                            ", n=" + std::to_string(n) + ")");
  // Floyd's algorithm: uniform k-subset of [n] with exactly k draws.
  std::vector<Literal> lits;
  lits.reserve(static_cast<std::size_t>(k));
  for (std::int32_t j = n - k + 1; j <= n; ++j) {
    auto t = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(j))) + 1;
    bool seen = false;
    for (const auto &l : lits)
      if (l.var == t) {
        seen = true;
        break;
      }
    lits.push_back(Literal{seen ? j : t, 1});
  }
  for (auto &l : lits)
    l.sign = rng.bernoulli(bias.p()) ? 1 : -1;
  return Clause(std::move(lits));
}

Formula sample_formula(std::int32_t n, std::int32_t k, BiasParams bias, double m,
                       SampleMode mode, Rng &rng) {
  if (!(m >= 0.0) || !std::isfinite(m))
    throw InvalidParameters("clause count must be a finite non-negative number");
  if (k < 1 || k > n)
    throw InvalidParameters("need 1 <= k <= n (k=" + std::to_string(k) +
                            ", n=" + std::to_string(n) + ")");
  std::int64_t count = mode == SampleMode::discrete ? std::llround(m) : rng.poisson(m);
  Formula f;
  f.n = n;
  f.k = k;
  f.bias = bias;
  f.seed = rng.seed();
  f.mode = mode;
  f.clauses.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i)
    f.clauses.push_back(sample_clause(n, k, bias, rng));
  return f;
}

Formula generate_formula(std::int32_t n, std::int32_t k, BiasParams bias, double m,
                         SampleMode mode, std::uint64_t seed) {
  Rng rng(seed);
  return sample_formula(n, k, bias, m, mode, rng);
}

} // namespace bksat
