#include <bit>
#include <numeric>

#include "bksat/solvers.hpp"

namespace bksat {
namespace {

struct MaskCnf {
  std::vector<std::uint64_t> pos, neg;

  explicit MaskCnf(CnfView f) {
    if (f.n > kBruteForceLimit)
      throw LimitExceeded("brute force refuses n = " + std::to_string(f.n) + " (limit " +
                          std::to_string(kBruteForceLimit) + ")");
    pos.reserve(f.clauses.size());
    neg.reserve(f.clauses.size());
    for (const auto &c : f.clauses) {
      std::uint64_t p = 0, q = 0;
      for (const auto &lit : c.literals()) {
        if (lit.var > f.n)
          throw InvalidParameters("clause variable exceeds n");
        (lit.sign > 0 ? p : q) |= 1ULL << (lit.var - 1);
      }
      pos.push_back(p);
      neg.push_back(q);
    }
  }

  bool satisfied_by(std::uint64_t a) const {
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (!(pos[i] & a) && !(neg[i] & ~a))
        return false;
    return true;
  }
};

} // namespace

std::uint64_t SolutionCounts::total() const noexcept {
  return std::accumulate(Z.begin(), Z.end(), std::uint64_t{0});
}

std::uint64_t SolutionCounts::total_minimal() const noexcept {
  return std::accumulate(M.begin(), M.end(), std::uint64_t{0});
}

void for_each_solution(CnfView f, const std::function<void(std::uint64_t)> &visit) {
  MaskCnf cnf(f);
  const std::uint64_t count = 1ULL << f.n;
  for (std::uint64_t a = 0; a < count; ++a)
    if (cnf.satisfied_by(a))
      visit(a);
}

SolutionCounts brute_force_sat(CnfView f) {
  MaskCnf cnf(f);
  const std::uint64_t count = 1ULL << f.n;
  std::vector<std::uint64_t> sat((count + 63) / 64, 0);
  for (std::uint64_t a = 0; a < count; ++a)
    if (cnf.satisfied_by(a))
      sat[a >> 6] |= 1ULL << (a & 63);
  auto is_sat = [&](std::uint64_t a) { return (sat[a >> 6] >> (a & 63)) & 1; };

  SolutionCounts out;
  out.Z.assign(static_cast<std::size_t>(f.n) + 1, 0);
  out.M.assign(static_cast<std::size_t>(f.n) + 1, 0);
  for (std::uint64_t a = 0; a < count; ++a) {
    if (!is_sat(a))
      continue;
    auto layer = static_cast<std::size_t>(std::popcount(a));
    ++out.Z[layer];
    bool minimal = true;
    for (auto rest = a; rest; rest &= rest - 1)
      if (is_sat(a & ~(rest & -rest))) {
        minimal = false;
        break;
      }
    if (minimal)
      ++out.M[layer];
  }
  return out;
}

} // namespace bksat
