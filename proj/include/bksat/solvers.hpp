#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bksat/dpll.hpp"
#include "bksat/formula.hpp"
#include "bksat/ucp.hpp"

namespace bksat {

inline constexpr std::int32_t kBruteForceLimit = 25;
inline constexpr std::int32_t kSparsityLimit = 22;

/// Per-layer solution counts. Z[i]: satisfying assignments with i TRUE
/// coordinates. M[i]: those whose every TRUE -> FALSE flip is unsatisfying.
struct SolutionCounts {
  std::vector<std::uint64_t> Z;
  std::vector<std::uint64_t> M;

  std::uint64_t total() const noexcept;
  std::uint64_t total_minimal() const noexcept;
  bool satisfiable() const noexcept { return total() > 0; }
};

/// Exhaustive enumeration of {-1,+1}^n; refuses n > 25.
SolutionCounts brute_force_sat(CnfView f);

/// Calls `visit` with every satisfying assignment as a bit mask (bit j set iff
/// x_{j+1} is TRUE). Refuses n > 25.
void for_each_solution(CnfView f, const std::function<void(std::uint64_t)> &visit);

/// Linear-time 2-SAT via strongly connected components of the implication
/// graph. Clauses of width 1 are accepted; wider clauses are rejected.
std::optional<Assignment> two_sat_solve(CnfView f);

/// Variables with the same value in every satisfying assignment.
struct SpineReport {
  std::vector<std::int32_t> s_plus;  ///< locked TRUE
  std::vector<std::int32_t> s_minus; ///< locked FALSE

  std::size_t size() const noexcept { return s_plus.size() + s_minus.size(); }
};

/// Throws InvalidParameters if f is unsatisfiable.
SpineReport spine_set(CnfView f, std::int32_t limit = kDpllDefaultLimit);
/// Same, reusing an existing solver and a known solution.
SpineReport spine_set(DpllSolver &solver, const Assignment &witness);

struct DegreeStats {
  std::vector<std::int64_t> d_plus;  ///< index v-1
  std::vector<std::int64_t> d_minus;
  std::int64_t D1 = 0;
  std::int64_t D2 = 0;
  /// 2*D2/D1, or 0 for an empty formula.
  double ratio() const noexcept {
    return D1 == 0 ? 0.0 : 2.0 * static_cast<double>(D2) / static_cast<double>(D1);
  }
};

DegreeStats degree_stats(CnfView f);

/// k-uniform (or mixed) hypergraph on vertices 1..n.
struct Hypergraph {
  std::int32_t n = 0;
  std::vector<std::vector<std::int32_t>> edges;
};

Hypergraph hypergraph_of(CnfView f);

struct SparsityResult {
  bool sparse = true;
  /// A vertex set with at most x*n vertices spanning more than y*|S| edges.
  std::vector<std::int32_t> witness;
  std::int64_t witness_edges = 0;
};

/// (x,y)-sparsity: every set of s <= x*n vertices spans at most y*s edges.
/// Exhaustive; refuses n > 22.
SparsityResult sparsity_check(const Hypergraph &h, double x, double y);

} // namespace bksat
