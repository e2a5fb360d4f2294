#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bksat/error.hpp"

namespace bksat {

/// Literal-sign bias of the generator. A literal occurs positive (x rather
/// than not-x) with probability p. Only p is stored; b = 1/2 - p is derived.
class BiasParams {
public:
  /// Throws InvalidParameters unless 0 <= p <= 1.
  static BiasParams from_p(double p);
  /// p = 1/2 - b.
  static BiasParams from_b(double b);

  double p() const noexcept { return p_; }
  double b() const noexcept { return 0.5 - p_; }
  /// 2p(1-p): probability that two independent literal signs disagree.
  double disagreement() const noexcept { return 2.0 * p_ * (1.0 - p_); }

  bool operator==(const BiasParams &) const = default;

private:
  explicit BiasParams(double p) : p_(p) {}
  double p_;
};

struct Literal {
  std::int32_t var = 0; ///< 1-based variable index.
  std::int8_t sign = 1; ///< +1 for x, -1 for not-x.

  /// Signed DIMACS integer (var or -var).
  int to_dimacs() const noexcept { return sign > 0 ? var : -var; }
  static Literal from_dimacs(int lit) noexcept {
    return Literal{lit > 0 ? lit : -lit, static_cast<std::int8_t>(lit > 0 ? 1 : -1)};
  }

  bool operator==(const Literal &) const = default;
};

/// Disjunction of literals over distinct variables, kept sorted by variable.
class Clause {
public:
  Clause() = default;
  /// Sorts the literals; throws InvalidParameters on a repeated variable or a
  /// non-positive index.
  explicit Clause(std::vector<Literal> literals);
  /// Convenience: signed DIMACS integers, e.g. {1, -2} for (x1 or not x2).
  static Clause of(std::initializer_list<int> dimacs);

  std::span<const Literal> literals() const noexcept { return lits_; }
  std::size_t width() const noexcept { return lits_.size(); }
  const Literal &operator[](std::size_t i) const { return lits_[i]; }
  std::int32_t max_var() const noexcept { return lits_.empty() ? 0 : lits_.back().var; }

  bool operator==(const Clause &) const = default;

private:
  std::vector<Literal> lits_;
};

/// Point of the hypercube {-1,+1}^n; -1 is FALSE, +1 is TRUE.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::size_t n, std::int8_t fill = -1) : values_(n, fill) {}
  explicit Assignment(std::vector<std::int8_t> values);

  std::size_t size() const noexcept { return values_.size(); }
  /// 1-based access.
  std::int8_t at(std::int32_t var) const { return values_[static_cast<std::size_t>(var - 1)]; }
  void set(std::int32_t var, std::int8_t value) { values_[static_cast<std::size_t>(var - 1)] = value; }
  std::span<const std::int8_t> values() const noexcept { return values_; }

  /// Number of coordinates equal to +1 (the layer index).
  std::size_t layer() const noexcept;

  bool operator==(const Assignment &) const = default;

private:
  std::vector<std::int8_t> values_;
};

/// Word over {-1, +1, *}; 0 encodes the star.
class SubcubeWord {
public:
  SubcubeWord() = default;
  explicit SubcubeWord(std::vector<std::int8_t> word);

  std::size_t size() const noexcept { return word_.size(); }
  std::span<const std::int8_t> entries() const noexcept { return word_; }
  std::size_t fixed_count() const noexcept;
  /// True iff the assignment agrees with every non-star coordinate.
  bool contains(const Assignment &a) const;
  std::string to_string() const;

  bool operator==(const SubcubeWord &) const = default;

private:
  std::vector<std::int8_t> word_;
};

enum class SampleMode { discrete, poisson };

std::string_view to_string(SampleMode mode) noexcept;
SampleMode parse_sample_mode(std::string_view text);

/// Width-agnostic clause list over n variables; what the solvers consume.
struct CnfView {
  std::int32_t n = 0;
  std::span<const Clause> clauses;
};

/// Biased k-SAT formula: every clause has width k, every variable is <= n.
struct Formula {
  std::int32_t n = 0;
  std::int32_t k = 0;
  BiasParams bias = BiasParams::from_p(0.5);
  std::vector<Clause> clauses;
  std::uint64_t seed = 0; ///< Generator seed, 0 for hand-built formulas.
  SampleMode mode = SampleMode::discrete;

  /// Validating constructor for hand-built formulas.
  static Formula make(std::int32_t n, std::int32_t k, BiasParams bias,
                      std::vector<Clause> clauses);
  /// Throws InvalidParameters if a clause breaks the width or range invariant.
  void validate() const;

  std::size_t size() const noexcept { return clauses.size(); }
  CnfView view() const noexcept { return CnfView{n, clauses}; }
  operator CnfView() const noexcept { return view(); }
};

// Generation ------------------------------------------------------------

class Rng;

/// Variable set uniform over k-subsets of [n]; signs i.i.d., +1 w.p. p.
Clause sample_clause(std::int32_t n, std::int32_t k, BiasParams bias, Rng &rng);

/// Discrete mode: exactly round(m) clauses. Poisson mode: Poisson(m) clauses.
/// The formula records rng.seed(); pass a fresh stream for reproducibility.
Formula sample_formula(std::int32_t n, std::int32_t k, BiasParams bias, double m,
                       SampleMode mode, Rng &rng);

/// Same as sample_formula with a fresh stream seeded by `seed`.
Formula generate_formula(std::int32_t n, std::int32_t k, BiasParams bias, double m,
                         SampleMode mode, std::uint64_t seed);

// Clause <-> forbidden sub-cube ---------------------------------------

/// Position j holds the value of x_j that falsifies the literal on x_j.
SubcubeWord clause_to_subcube(const Clause &c, std::int32_t n);
/// Inverse of clause_to_subcube; throws InvalidParameters if the word has no
/// fixed coordinate.
Clause subcube_to_clause(const SubcubeWord &w);

// Evaluation ------------------------------------------------------------

struct EvalResult {
  std::vector<std::size_t> violated; ///< Indices of clauses with every literal false.
  bool satisfied() const noexcept { return violated.empty(); }
};

bool literal_true(const Literal &lit, const Assignment &a);
bool clause_satisfied(const Clause &c, const Assignment &a);
EvalResult eval(CnfView f, const Assignment &a);

// DIMACS ----------------------------------------------------------------

/// Canonical DIMACS with a metadata comment
/// "c biased-ksat k=<k> p=<p> seed=<seed> mode=<mode>".
std::string write_dimacs(const Formula &f);
/// Reads what write_dimacs produces and plain DIMACS (metadata then defaults
/// to k = first clause width, p = 0.5, seed = 0, discrete). Throws ParseError.
Formula read_dimacs(std::string_view text);

/// Shortest decimal that round-trips the double.
std::string format_double(double x);

} // namespace bksat
