#include "bksat/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace bksat {

BiasParams BiasParams::from_p(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParameters("bias p must lie in [0, 1], got " + format_double(p));
  return BiasParams(p);
}

BiasParams BiasParams::from_b(double b) { return from_p(0.5 - b); }

Clause::Clause(std::vector<Literal> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end(),
            [](const Literal &a, const Literal &b) { return a.var < b.var; });
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (lits_[i].var < 1)
      throw InvalidParameters("literal with non-positive variable index");
    if (lits_[i].sign != 1 && lits_[i].sign != -1)
      throw InvalidParameters("literal sign must be +1 or -1");
    if (i > 0 && lits_[i].var == lits_[i - 1].var)
      throw InvalidParameters("variable x" + std::to_string(lits_[i].var) +
                              " occurs twice in one clause");
  }
}

Clause Clause::of(std::initializer_list<int> dimacs) {
  std::vector<Literal> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) {
    if (d == 0)
      throw InvalidParameters("literal 0 is not a variable");
    lits.push_back(Literal::from_dimacs(d));
  }
  return Clause(std::move(lits));
}

Assignment::Assignment(std::vector<std::int8_t> values) : values_(std::move(values)) {
  for (auto v : values_)
    if (v != 1 && v != -1)
      throw InvalidParameters("assignment entries must be +1 or -1");
}

std::size_t Assignment::layer() const noexcept {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), 1));
}

SubcubeWord::SubcubeWord(std::vector<std::int8_t> word) : word_(std::move(word)) {
  for (auto v : word_)
    if (v != 1 && v != -1 && v != 0)
      throw InvalidParameters("sub-cube entries must be -1, +1 or * (0)");
}

std::size_t SubcubeWord::fixed_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(word_.begin(), word_.end(), [](std::int8_t v) { return v != 0; }));
}

bool SubcubeWord::contains(const Assignment &a) const {
  if (a.size() != word_.size())
    throw InvalidParameters("sub-cube and assignment lengths differ");
  auto values = a.values();
  for (std::size_t j = 0; j < word_.size(); ++j)
    if (word_[j] != 0 && word_[j] != values[j])
      return false;
  return true;
}

std::string SubcubeWord::to_string() const {
  std::string out = "(";
  for (std::size_t j = 0; j < word_.size(); ++j) {
    if (j)
      out += ',';
    out += word_[j] == 0 ? "*" : (word_[j] > 0 ? "1" : "-1");
  }
  return out + ")";
}

std::string_view to_string(SampleMode mode) noexcept {
  return mode == SampleMode::poisson ? "poisson" : "discrete";
}

SampleMode parse_sample_mode(std::string_view text) {
  if (text == "discrete")
    return SampleMode::discrete;
  if (text == "poisson")
    return SampleMode::poisson;
  throw InvalidParameters("unknown sampling mode '" + std::string(text) + "'");
}

Formula Formula::make(std::int32_t n, std::int32_t k, BiasParams bias,
                      std::vector<Clause> clauses) {
  Formula f;
  f.n = n;
  f.k = k;
  f.bias = bias;
  f.clauses = std::move(clauses);
  f.validate();
  return f;
}

void Formula::validate() const {
  if (n < 0 || k < 0)
    throw InvalidParameters("negative n or k");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].width() != static_cast<std::size_t>(k))
      throw InvalidParameters("clause " + std::to_string(i) + " has width " +
                              std::to_string(clauses[i].width()) + ", expected " +
                              std::to_string(k));
    if (clauses[i].max_var() > n)
      throw InvalidParameters("clause " + std::to_string(i) + " uses a variable above n");
  }
}

SubcubeWord clause_to_subcube(const Clause &c, std::int32_t n) {
  if (c.max_var() > n)
    throw InvalidParameters("clause variable exceeds n");
  std::vector<std::int8_t> word(static_cast<std::size_t>(n), 0);
  for (const auto &lit : c.literals())
    word[static_cast<std::size_t>(lit.var - 1)] = static_cast<std::int8_t>(-lit.sign);
  return SubcubeWord(std::move(word));
}

Clause subcube_to_clause(const SubcubeWord &w) {
  std::vector<Literal> lits;
  auto entries = w.entries();
  for (std::size_t j = 0; j < entries.size(); ++j)
    if (entries[j] != 0)
      lits.push_back(Literal{static_cast<std::int32_t>(j + 1),
                             static_cast<std::int8_t>(-entries[j])});
  if (lits.empty())
    throw InvalidParameters("malformed sub-cube word: no fixed coordinate");
  return Clause(std::move(lits));
}

bool literal_true(const Literal &lit, const Assignment &a) { return a.at(lit.var) == lit.sign; }

bool clause_satisfied(const Clause &c, const Assignment &a) {
  for (const auto &lit : c.literals())
    if (literal_true(lit, a))
      return true;
  return false;
}

EvalResult eval(CnfView f, const Assignment &a) {
  if (a.size() != static_cast<std::size_t>(f.n))
    throw InvalidParameters("assignment length " + std::to_string(a.size()) +
                            " does not match n = " + std::to_string(f.n));
  EvalResult r;
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    if (!clause_satisfied(f.clauses[i], a))
      r.violated.push_back(i);
  return r;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

} // namespace bksat
