#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bksat/formula.hpp"

namespace bksat {

class Rng;

/// How a free step picks the value of the chosen variable.
enum class FreeStepPolicy {
  /// TRUE with probability 1 - p, as the algorithm is usually written.
  pseudocode,
  /// TRUE with probability p, so a fresh literal is falsified w.p. 2p(1-p)
  /// under the positive-with-probability-p generator.
  sign_matched,
};

std::string_view to_string(FreeStepPolicy policy) noexcept;
FreeStepPolicy parse_free_step_policy(std::string_view text);

struct UcpOptions {
  FreeStepPolicy policy = FreeStepPolicy::pseudocode;
  /// Draw free variables from all n variables (default) or only from those
  /// occurring in the formula.
  bool occurring_only = false;
  bool record_trajectory = true;
};

/// Clause-size census after each lock. Row j holds S_0(j)..S_k(j) followed by
/// the number of satisfied (removed) clauses, for j = 0..n.
class Trajectory {
public:
  Trajectory() = default;
  explicit Trajectory(std::int32_t k) : k_(k) {}

  std::int32_t k() const noexcept { return k_; }
  std::size_t steps() const noexcept {
    return data_.empty() ? 0 : data_.size() / static_cast<std::size_t>(k_ + 2);
  }
  /// S_0..S_k at step j.
  std::span<const std::int64_t> counts(std::size_t j) const {
    return {data_.data() + j * stride(), static_cast<std::size_t>(k_ + 1)};
  }
  std::int64_t count(std::size_t j, std::int32_t i) const { return counts(j)[static_cast<std::size_t>(i)]; }
  std::int64_t satisfied(std::size_t j) const { return data_[j * stride() + static_cast<std::size_t>(k_ + 1)]; }

  void push(std::span<const std::int64_t> census, std::int64_t satisfied) {
    data_.insert(data_.end(), census.begin(), census.end());
    data_.push_back(satisfied);
  }

private:
  std::size_t stride() const noexcept { return static_cast<std::size_t>(k_ + 2); }
  std::int32_t k_ = 0;
  std::vector<std::int64_t> data_;
};

struct UcpOutcome {
  bool success = false;
  /// The assignment UCP built; satisfies the formula iff success.
  Assignment assignment;
  /// First step (variables locked) at which an empty clause appeared.
  std::optional<std::int64_t> first_failure_step;
  std::int64_t unit_steps = 0;
  std::int64_t free_steps = 0;
  Trajectory trajectory;
};

/// Unit clause propagation. Works on mixed clause widths; the census covers
/// widths 0..max width. Runs until no non-empty clause remains, then fills in
/// the untouched variables with the free-step rule.
UcpOutcome ucp_run(CnfView f, BiasParams bias, Rng &rng, const UcpOptions &options = {});

} // namespace bksat
