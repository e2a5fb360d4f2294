#include "bksat/dpll.hpp"

#include <bit>

namespace bksat {

DpllSolver::DpllSolver(CnfView f, std::int32_t limit) : n_(f.n) {
  if (limit > kDpllHardLimit)
    throw InvalidParameters("DPLL limit cannot exceed " + std::to_string(kDpllHardLimit));
  if (f.n > limit)
    throw LimitExceeded("DPLL refuses n = " + std::to_string(f.n) + " (limit " +
                        std::to_string(limit) + ")");
  pos_.reserve(f.clauses.size() + 1);
  neg_.reserve(f.clauses.size() + 1);
  for (const auto &c : f.clauses)
    add_clause(c);
}

void DpllSolver::add_clause(const Clause &c) {
  std::uint64_t p = 0, q = 0;
  for (const auto &lit : c.literals()) {
    if (lit.var > n_)
      throw InvalidParameters("clause variable exceeds n");
    auto bit = 1ULL << (lit.var - 1);
    (lit.sign > 0 ? p : q) |= bit;
  }
  pos_.push_back(p);
  neg_.push_back(q);
  if ((p | q) == 0)
    ++empty_count_;
}

void DpllSolver::truncate(std::size_t count) {
  while (pos_.size() > count) {
    if ((pos_.back() | neg_.back()) == 0)
      --empty_count_;
    pos_.pop_back();
    neg_.pop_back();
  }
}

// Unit propagation and pure literals to a fixed point; false on conflict.
bool DpllSolver::propagate(State &s) {
  const std::size_t m = pos_.size();
  for (;;) {
    bool changed = false;
    std::uint64_t seen_pos = 0, seen_neg = 0;
    bool all_sat = true;
    for (std::size_t i = 0; i < m; ++i) {
      if ((pos_[i] & s.t) | (neg_[i] & s.f))
        continue;
      const auto free = ~(s.t | s.f);
      const auto p = pos_[i] & free;
      const auto q = neg_[i] & free;
      const auto cnt = std::popcount(p) + std::popcount(q);
      if (cnt == 0)
        return false;
      if (cnt == 1) {
        if (p)
          s.t |= p;
        else
          s.f |= q;
        changed = true;
        continue;
      }
      all_sat = false;
      seen_pos |= p;
      seen_neg |= q;
    }
    if (changed)
      continue;
    if (all_sat)
      return true;
    const auto free = ~(s.t | s.f);
    const auto pure_pos = seen_pos & ~seen_neg & free;
    const auto pure_neg = seen_neg & ~seen_pos & free;
    if (!(pure_pos | pure_neg))
      return true;
    s.t |= pure_pos;
    s.f |= pure_neg;
  }
}

bool DpllSolver::search(State s) {
  if (!propagate(s))
    return false;

  std::int32_t counts[64] = {};
  bool open = false;
  const auto free = ~(s.t | s.f);
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    if ((pos_[i] & s.t) | (neg_[i] & s.f))
      continue;
    open = true;
    auto lits = (pos_[i] | neg_[i]) & free;
    while (lits) {
      ++counts[std::countr_zero(lits)];
      lits &= lits - 1;
    }
  }
  if (!open) {
    model_ = s;
    return true;
  }
  int best = -1;
  for (int v = 0; v < n_; ++v)
    if (counts[v] > 0 && (best < 0 || counts[v] > counts[best]))
      best = v;

  ++decisions_;
  const auto bit = 1ULL << best;
  State left = s;
  left.t |= bit;
  if (search(left))
    return true;
  State right = s;
  right.f |= bit;
  return search(right);
}

std::optional<Assignment> DpllSolver::solve(std::span<const Literal> assumptions) {
  decisions_ = 0;
  if (empty_count_ > 0)
    return std::nullopt;
  State s;
  for (const auto &lit : assumptions) {
    if (lit.var < 1 || lit.var > n_)
      throw InvalidParameters("assumption variable out of range");
    auto bit = 1ULL << (lit.var - 1);
    (lit.sign > 0 ? s.t : s.f) |= bit;
  }
  if (s.t & s.f)
    return std::nullopt;
  if (!search(s))
    return std::nullopt;
  Assignment a(static_cast<std::size_t>(n_), -1);
  for (std::int32_t v = 1; v <= n_; ++v)
    if (model_.t & (1ULL << (v - 1)))
      a.set(v, 1);
  return a;
}

std::optional<Assignment> dpll_sat(CnfView f, std::int32_t limit) {
  DpllSolver solver(f, limit);
  return solver.solve();
}

} // namespace bksat
