#pragma once

// Naive reference implementations shared by the unit tests. They are kept
// deliberately simple so they can serve as oracles for the library.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bksat/bounds_exact.hpp"
#include "bksat/formula.hpp"
#include "bksat/rng.hpp"

namespace oracle {

// Bit j of mask is x_{j+1}; set means TRUE.
inline bool literal_true(const bksat::Literal &lit, std::uint64_t mask) {
  const bool value = (mask >> (lit.var - 1)) & 1u;
  return lit.sign > 0 ? value : !value;
}

inline bool clause_true(const bksat::Clause &c, std::uint64_t mask) {
  for (const auto &lit : c.literals())
    if (literal_true(lit, mask))
      return true;
  return false;
}

inline bool satisfies(bksat::CnfView f, std::uint64_t mask) {
  for (const auto &c : f.clauses)
    if (!clause_true(c, mask))
      return false;
  return true;
}

inline std::vector<std::uint64_t> solutions(bksat::CnfView f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.n); ++mask)
    if (satisfies(f, mask))
      out.push_back(mask);
  return out;
}

inline bksat::Assignment to_assignment(std::uint64_t mask, std::int32_t n) {
  bksat::Assignment a(static_cast<std::size_t>(n));
  for (std::int32_t v = 1; v <= n; ++v)
    a.set(v, ((mask >> (v - 1)) & 1u) ? 1 : -1);
  return a;
}

inline std::uint64_t to_mask(const bksat::Assignment &a) {
  std::uint64_t mask = 0;
  for (std::int32_t v = 1; v <= static_cast<std::int32_t>(a.size()); ++v)
    if (a.at(v) > 0)
      mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

// Clauses of random width 1..max_width over distinct variables, drawn by
// rejection so the code path differs from the library generator.
inline std::vector<bksat::Clause> random_clauses(std::int32_t n, std::int32_t max_width,
                                                 std::size_t m, bksat::Rng &rng) {
  std::vector<bksat::Clause> out;
  for (std::size_t c = 0; c < m; ++c) {
    const auto width = 1 + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(
                               std::min(max_width, n))));
    std::vector<bksat::Literal> lits;
    while (static_cast<std::int32_t>(lits.size()) < width) {
      const auto v = 1 + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n)));
      bool seen = false;
      for (const auto &l : lits)
        seen = seen || l.var == v;
      if (!seen)
        lits.push_back({v, static_cast<std::int8_t>(rng.below(2) ? 1 : -1)});
    }
    out.emplace_back(std::move(lits));
  }
  return out;
}

using bksat::bounds::Rational;

// Every clause over [n] with k distinct variables, with its probability under
// the p-biased model (exact rational weight).
struct WeightedClause {
  bksat::Clause clause;
  Rational weight;
};

inline std::vector<WeightedClause> all_clauses(std::int32_t n, std::int32_t k,
                                               const Rational &p) {
  std::vector<WeightedClause> out;
  const Rational per_set = Rational(1) / bksat::bounds::binomial_exact(n, k);
  for (std::uint32_t support = 0; support < (1u << n); ++support) {
    if (__builtin_popcount(support) != k)
      continue;
    for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
      std::vector<bksat::Literal> lits;
      Rational w = per_set;
      int s = 0;
      for (int v = 0; v < n; ++v) {
        if (!(support >> v & 1))
          continue;
        const bool positive = signs >> s++ & 1;
        lits.push_back({v + 1, static_cast<std::int8_t>(positive ? 1 : -1)});
        w *= positive ? p : Rational(1) - p;
      }
      out.push_back({bksat::Clause(lits), w});
    }
  }
  return out;
}

// Layer-i point with the first i coordinates TRUE, and a partner at Hamming
// distance h obtained by moving h/2 TRUE coordinates to FALSE positions.
inline std::pair<std::uint64_t, std::uint64_t> layer_pair(std::int64_t i, std::int64_t n,
                                                          std::int64_t h) {
  std::uint64_t x = (std::uint64_t{1} << i) - 1;
  std::uint64_t y = x;
  for (std::int64_t t = 0; t < h / 2; ++t) {
    y &= ~(std::uint64_t{1} << t);
    y |= std::uint64_t{1} << (n - 1 - t);
  }
  return {x, y};
}

inline Rational coverage_oracle(const std::vector<WeightedClause> &cs, std::uint64_t x,
                                std::optional<std::uint64_t> y = std::nullopt) {
  Rational total = 0;
  for (const auto &wc : cs)
    if (!clause_true(wc.clause, x) && (!y || !clause_true(wc.clause, *y)))
      total += wc.weight;
  return total;
}

// Shifted families of (r+1)-subsets of [V]: down-sets of the componentwise
// order on sorted tuples. Shifting keeps |A| and never grows the shadow, so
// the best shifted family is the best family. Returns best[s] = max |A| with
// |shadow A| = s, for s <= cap.
class ShiftedSearch {
public:
  ShiftedSearch(int r, int V, int cap) : cap_(cap), face_count_(std::size_t{1} << V, 0) {
    for (std::uint32_t m = 0; m < (1u << V); ++m)
      if (std::popcount(m) == r + 1)
        elems_.push_back(m);
    // Componentwise smaller tuples have a smaller sum.
    auto key = [](std::uint32_t m) {
      int sum = 0;
      for (std::uint32_t x = m; x; x &= x - 1)
        sum += std::countr_zero(x);
      return std::pair{sum, m};
    };
    std::sort(elems_.begin(), elems_.end(), [&](auto a, auto b) { return key(a) < key(b); });
    for (std::size_t i = 0; i < elems_.size(); ++i)
      index_[elems_[i]] = i;
    covers_.resize(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      const auto m = elems_[i];
      for (std::uint32_t x = m; x; x &= x - 1) {
        const int v = std::countr_zero(x);
        if (v > 0 && !(m & (1u << (v - 1))))
          covers_[i].push_back(index_.at((m & ~(1u << v)) | (1u << (v - 1))));
      }
    }
    present_.assign(elems_.size(), false);
    best_.assign(static_cast<std::size_t>(cap) + 1, -1);
    best_[0] = 0;
    dfs(0, 0, 0);
  }

  const std::vector<std::int64_t> &best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  void dfs(std::size_t from, std::int64_t size, int shadow) {
    ++nodes_;
    best_[static_cast<std::size_t>(shadow)] = std::max(best_[static_cast<std::size_t>(shadow)], size);
    for (std::size_t i = from; i < elems_.size(); ++i) {
      bool ok = true;
      for (auto c : covers_[i])
        ok = ok && present_[c];
      if (!ok)
        continue;
      const auto m = elems_[i];
      int added = 0;
      for (std::uint32_t x = m; x; x &= x - 1)
        added += face_count_[m & ~(x & -x)] == 0;
      if (shadow + added > cap_)
        continue;
      for (std::uint32_t x = m; x; x &= x - 1)
        ++face_count_[m & ~(x & -x)];
      present_[i] = true;
      dfs(i + 1, size + 1, shadow + added);
      present_[i] = false;
      for (std::uint32_t x = m; x; x &= x - 1)
        --face_count_[m & ~(x & -x)];
    }
  }

  int cap_;
  std::vector<std::uint32_t> elems_;
  std::map<std::uint32_t, std::size_t> index_;
  std::vector<std::vector<std::size_t>> covers_;
  std::vector<bool> present_;
  std::vector<int> face_count_;
  std::vector<std::int64_t> best_;
  std::uint64_t nodes_ = 0;
};

} // namespace oracle
