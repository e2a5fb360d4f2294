#include <bit>
#include <cmath>

#include "bksat/solvers.hpp"

namespace bksat {

DegreeStats degree_stats(CnfView f) {
  DegreeStats out;
  out.d_plus.assign(static_cast<std::size_t>(f.n), 0);
  out.d_minus.assign(static_cast<std::size_t>(f.n), 0);
  for (const auto &c : f.clauses)
    for (const auto &lit : c.literals()) {
      if (lit.var > f.n)
        throw InvalidParameters("clause variable exceeds n");
      auto &d = lit.sign > 0 ? out.d_plus : out.d_minus;
      ++d[static_cast<std::size_t>(lit.var - 1)];
    }
  for (std::size_t v = 0; v < out.d_plus.size(); ++v) {
    out.D1 += out.d_plus[v] + out.d_minus[v];
    out.D2 += out.d_plus[v] * out.d_minus[v];
  }
  return out;
}

Hypergraph hypergraph_of(CnfView f) {
  Hypergraph h;
  h.n = f.n;
  h.edges.reserve(f.clauses.size());
  for (const auto &c : f.clauses) {
    std::vector<std::int32_t> e;
    for (const auto &lit : c.literals())
      e.push_back(lit.var);
    h.edges.push_back(std::move(e));
  }
  return h;
}

SparsityResult sparsity_check(const Hypergraph &h, double x, double y) {
  if (h.n > kSparsityLimit)
    throw LimitExceeded("sparsity check refuses n = " + std::to_string(h.n) + " (limit " +
                        std::to_string(kSparsityLimit) + ")");
  if (!(x >= 0.0) || !(y >= 0.0))
    throw InvalidParameters("sparsity parameters must be non-negative");
  std::vector<std::uint32_t> masks;
  masks.reserve(h.edges.size());
  for (const auto &e : h.edges) {
    std::uint32_t mask = 0;
    for (auto v : e) {
      if (v < 1 || v > h.n)
        throw InvalidParameters("hyperedge vertex out of range");
      mask |= 1u << (v - 1);
    }
    masks.push_back(mask);
  }
  const auto max_size = static_cast<int>(std::floor(x * h.n + 1e-12));
  SparsityResult out;
  const std::uint32_t count = h.n == 0 ? 1u : (1u << h.n);
  for (std::uint32_t s = 1; s < count; ++s) {
    const int size = std::popcount(s);
    if (size > max_size)
      continue;
    std::int64_t inside = 0;
    for (auto e : masks)
      if ((e & ~s) == 0)
        ++inside;
    if (static_cast<double>(inside) > y * size) {
      out.sparse = false;
      out.witness_edges = inside;
      for (std::int32_t v = 1; v <= h.n; ++v)
        if (s & (1u << (v - 1)))
          out.witness.push_back(v);
      return out;
    }
  }
  return out;
}

} // namespace bksat
