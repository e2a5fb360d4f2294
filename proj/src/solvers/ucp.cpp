#include "bksat/ucp.hpp"

#include <algorithm>

#include "bksat/rng.hpp"

namespace bksat {
namespace {

// Index set with O(1) insert, erase and uniform sampling.
class SwapSet {
public:
  explicit SwapSet(std::size_t universe) : pos_(universe, kAbsent) {}

  bool contains(std::uint32_t x) const { return pos_[x] != kAbsent; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::uint32_t operator[](std::size_t i) const { return items_[i]; }

  void insert(std::uint32_t x) {
    if (contains(x))
      return;
    pos_[x] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(x);
  }
  void erase(std::uint32_t x) {
    auto at = pos_[x];
    if (at == kAbsent)
      return;
    auto last = items_.back();
    items_[at] = last;
    pos_[last] = at;
    items_.pop_back();
    pos_[x] = kAbsent;
  }

private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;
  std::vector<std::uint32_t> pos_;
  std::vector<std::uint32_t> items_;
};

struct Occurrence {
  std::uint32_t clause;
  std::int8_t sign;
};

} // namespace

std::string_view to_string(FreeStepPolicy policy) noexcept {
  return policy == FreeStepPolicy::sign_matched ? "sign_matched" : "pseudocode";
}

FreeStepPolicy parse_free_step_policy(std::string_view text) {
  if (text == "pseudocode")
    return FreeStepPolicy::pseudocode;
  if (text == "sign_matched")
    return FreeStepPolicy::sign_matched;
  throw InvalidParameters("unknown free-step policy '" + std::string(text) + "'");
}

UcpOutcome ucp_run(CnfView f, BiasParams bias, Rng &rng, const UcpOptions &options) {
  const auto n = static_cast<std::size_t>(f.n);
  const auto m = f.clauses.size();

  std::int32_t width = 0;
  for (const auto &c : f.clauses)
    width = std::max(width, static_cast<std::int32_t>(c.width()));

  // CSR occurrence lists.
  std::vector<std::uint32_t> start(n + 2, 0);
  for (const auto &c : f.clauses)
    for (const auto &lit : c.literals())
      ++start[static_cast<std::size_t>(lit.var) + 1];
  for (std::size_t v = 1; v < start.size(); ++v)
    start[v] += start[v - 1];
  std::vector<Occurrence> occ(start.back());
  {
    auto fill = start;
    for (std::uint32_t ci = 0; ci < m; ++ci)
      for (const auto &lit : f.clauses[ci].literals())
        occ[fill[static_cast<std::size_t>(lit.var)]++] = Occurrence{ci, lit.sign};
  }

  std::vector<std::int32_t> size(m);
  std::vector<std::uint8_t> done(m, 0); // satisfied
  std::vector<std::int64_t> census(static_cast<std::size_t>(width) + 1, 0);
  SwapSet units(m);
  std::int64_t satisfied = 0;
  std::int64_t nonempty = 0;
  for (std::uint32_t ci = 0; ci < m; ++ci) {
    size[ci] = static_cast<std::int32_t>(f.clauses[ci].width());
    ++census[static_cast<std::size_t>(size[ci])];
    if (size[ci] == 1)
      units.insert(ci);
    if (size[ci] > 0)
      ++nonempty;
  }

  UcpOutcome out;
  out.assignment = Assignment(n, -1);
  out.trajectory = Trajectory(width);
  if (census[0] > 0)
    out.first_failure_step = 0;
  if (options.record_trajectory)
    out.trajectory.push(census, satisfied);

  std::vector<std::uint8_t> assigned(n + 1, 0);
  SwapSet free_vars(n + 1);
  for (std::uint32_t v = 1; v <= n; ++v)
    if (!options.occurring_only || start[v + 1] > start[v])
      free_vars.insert(v);

  const double p_true = options.policy == FreeStepPolicy::pseudocode ? 1.0 - bias.p() : bias.p();
  std::int64_t step = 0;

  auto lock = [&](std::uint32_t v, std::int8_t value) {
    assigned[v] = 1;
    free_vars.erase(v);
    out.assignment.set(static_cast<std::int32_t>(v), value);
    ++step;
    for (auto o = start[v]; o < start[v + 1]; ++o) {
      auto ci = occ[o].clause;
      if (done[ci])
        continue;
      auto &s = size[ci];
      --census[static_cast<std::size_t>(s)];
      if (occ[o].sign == value) {
        done[ci] = 1;
        ++satisfied;
        --nonempty;
        if (s == 1)
          units.erase(ci);
      } else {
        --s;
        ++census[static_cast<std::size_t>(s)];
        if (s == 1) {
          units.insert(ci);
        } else if (s == 0) {
          units.erase(ci);
          --nonempty;
          if (!out.first_failure_step)
            out.first_failure_step = step;
        }
      }
    }
    if (options.record_trajectory)
      out.trajectory.push(census, satisfied);
  };

  while (nonempty > 0) {
    if (!units.empty()) {
      // Each unit clause holds one unassigned literal, so a uniform unit
      // clause is a uniform element of the disjoint union of unit clauses.
      auto ci = units[rng.below(units.size())];
      for (const auto &lit : f.clauses[ci].literals())
        if (!assigned[static_cast<std::size_t>(lit.var)]) {
          lock(static_cast<std::uint32_t>(lit.var), lit.sign);
          break;
        }
      ++out.unit_steps;
    } else {
      auto v = free_vars[rng.below(free_vars.size())];
      lock(v, rng.bernoulli(p_true) ? 1 : -1);
      ++out.free_steps;
    }
  }
  // Leftover variables touch no live clause; set them by the free-step rule.
  for (std::uint32_t v = 1; v <= n; ++v)
    if (!assigned[v]) {
      auto value = static_cast<std::int8_t>(rng.bernoulli(p_true) ? 1 : -1);
      if (options.record_trajectory) {
        assigned[v] = 1;
        out.assignment.set(static_cast<std::int32_t>(v), value);
        ++step;
        out.trajectory.push(census, satisfied);
      } else {
        out.assignment.set(static_cast<std::int32_t>(v), value);
      }
    }
  out.success = census[0] == 0;
  return out;
}

} // namespace bksat
