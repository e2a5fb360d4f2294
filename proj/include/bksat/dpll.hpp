#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bksat/formula.hpp"

namespace bksat {

inline constexpr std::int32_t kDpllDefaultLimit = 60;
inline constexpr std::int32_t kDpllHardLimit = 64;

/// Complete DPLL over 64-bit clause masks: unit propagation, pure literals,
/// most-frequent-variable branching with TRUE first.
///
/// The clause set is fixed at construction; solve() may be called repeatedly
/// with different assumption literals.
class DpllSolver {
public:
  explicit DpllSolver(CnfView f, std::int32_t limit = kDpllDefaultLimit);

  std::int32_t num_vars() const noexcept { return n_; }

  /// Satisfying assignment of the formula plus the assumptions, if any.
  std::optional<Assignment> solve(std::span<const Literal> assumptions = {});

  /// Appends a clause (used for one extra clause on top of a base formula).
  void add_clause(const Clause &c);
  /// Removes clauses added after the first `count`.
  void truncate(std::size_t count);
  std::size_t num_clauses() const noexcept { return pos_.size(); }

  /// Branching decisions made by the last solve().
  std::uint64_t decisions() const noexcept { return decisions_; }

private:
  struct State {
    std::uint64_t t = 0; // variables set TRUE
    std::uint64_t f = 0; // variables set FALSE
  };
  bool search(State s);
  bool propagate(State &s);

  std::int32_t n_;
  std::vector<std::uint64_t> pos_;
  std::vector<std::uint64_t> neg_;
  std::size_t empty_count_ = 0;
  State model_;
  std::uint64_t decisions_ = 0;
};

/// One-shot convenience wrapper.
std::optional<Assignment> dpll_sat(CnfView f, std::int32_t limit = kDpllDefaultLimit);

} // namespace bksat
