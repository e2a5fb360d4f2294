#include <bit>
#include <cmath>

#include "bksat/kk.hpp"

namespace bksat::kk {
namespace {

std::uint32_t full_mask(std::int32_t d) { return (1u << d) - 1u; }

void check_table(const SignFunctionTable &g) {
  if (g.d < 0 || g.d > 20)
    throw InvalidParameters("sign function dimension out of range");
  if (g.g.size() != (std::size_t{1} << g.d))
    throw InvalidParameters("sign function table must have 2^d entries");
}

template <class T> T power(T base, std::int64_t e) {
  T r = 1;
  for (std::int64_t j = 0; j < e; ++j)
    r *= base;
  return r;
}

// W(sigma) = (1/2 + b)^h (1/2 - b)^(d - h), h the number of +1 coordinates.
template <class T> T w_generic(const SignFunctionTable &g, const T &b) {
  check_table(g);
  if (!g.is_odd())
    throw InvalidParameters("w(g) needs an odd sign function");
  if (g.is_zero())
    throw InvalidParameters("w(g) is undefined for g identically 0");
  const T half = T(1) / 2;
  const T up = half + b, down = half - b;
  const auto all = full_mask(g.d);
  T num = 0, den = 0;
  for (std::uint32_t s = 0; s <= all; ++s) {
    if (g.g[s] != 1)
      continue;
    const int h = std::popcount(s);
    const T w = power(up, h) * power(down, g.d - h);
    const T w_mirror = power(up, g.d - h) * power(down, h);
    num += w - w_mirror;
    den += w + w_mirror;
  }
  return num / den;
}

} // namespace

bool SignFunctionTable::is_odd() const {
  const auto all = full_mask(d);
  for (std::uint32_t s = 0; s <= all; ++s)
    if (g[s] != -g[s ^ all])
      return false;
  return true;
}

bool SignFunctionTable::is_monotone() const {
  const auto all = full_mask(d);
  for (std::uint32_t s = 0; s <= all; ++s)
    for (std::int32_t j = 0; j < d; ++j)
      if (!(s & (1u << j)) && g[s] > g[s | (1u << j)])
        return false;
  return true;
}

bool SignFunctionTable::is_zero() const {
  for (auto v : g)
    if (v != 0)
      return false;
  return true;
}

SignFunctionTable SignFunctionTable::dictator(std::int32_t d, std::int32_t j) {
  if (j < 0 || j >= d)
    throw InvalidParameters("dictator coordinate out of range");
  SignFunctionTable t{d, std::vector<std::int8_t>(std::size_t{1} << d)};
  for (std::uint32_t s = 0; s < t.g.size(); ++s)
    t.g[s] = (s >> j) & 1u ? 1 : -1;
  return t;
}

SignFunctionTable SignFunctionTable::majority(std::int32_t d) {
  SignFunctionTable t{d, std::vector<std::int8_t>(std::size_t{1} << d)};
  for (std::uint32_t s = 0; s < t.g.size(); ++s) {
    const int sum = 2 * std::popcount(s) - d;
    t.g[s] = static_cast<std::int8_t>(sum > 0 ? 1 : (sum < 0 ? -1 : 0));
  }
  return t;
}

SignFunctionTable SignFunctionTable::mirrored() const {
  SignFunctionTable t = *this;
  for (auto &v : t.g)
    v = static_cast<std::int8_t>(-v);
  return t;
}

double w_of_g(const SignFunctionTable &g, double b) { return w_generic<double>(g, b); }

bounds::Rational w_of_g_exact(const SignFunctionTable &g, const bounds::Rational &b) {
  return w_generic<bounds::Rational>(g, b);
}

// An odd monotone g is determined by U = g^{-1}(1): U must be an up-set
// disjoint from its antipode -U (which is then g^{-1}(-1)).
MinW min_w_brute(std::int32_t d, const bounds::Rational &b) {
  if (d < 1 || d > 4)
    throw LimitExceeded("min_w_brute enumerates sign functions only for 1 <= d <= 4");
  const std::uint32_t points = 1u << d;
  const std::uint32_t all = points - 1u;
  const std::uint64_t subsets = std::uint64_t{1} << points;
  MinW out;
  bool have = false;
  for (std::uint64_t u = 1; u < subsets; ++u) {
    auto in = [&](std::uint32_t s) { return (u >> s) & 1u; };
    bool ok = true;
    for (std::uint32_t s = 0; s < points && ok; ++s) {
      if (!in(s))
        continue;
      if (in(s ^ all))
        ok = false;
      for (std::int32_t j = 0; j < d && ok; ++j)
        if (!in(s | (1u << j)))
          ok = false;
    }
    if (!ok)
      continue;
    SignFunctionTable g{d, std::vector<std::int8_t>(points, 0)};
    for (std::uint32_t s = 0; s < points; ++s)
      if (in(s)) {
        g.g[s] = 1;
        g.g[s ^ all] = -1;
      }
    ++out.functions;
    auto w = w_of_g_exact(g, b);
    if (!have || w < out.value) {
      out.value = w;
      out.argmin = g;
      have = true;
    }
  }
  out.value_double = static_cast<double>(out.value);
  out.dictator_attains = w_of_g_exact(SignFunctionTable::dictator(d, 0), b) == out.value;
  return out;
}

double S_term(std::int64_t i, std::int64_t a, std::int32_t d, double b) {
  if (i < 0 || a > d)
    throw InvalidParameters("S(i, a) needs i >= 0 and a <= d");
  const double up = 0.5 + b, down = 0.5 - b;
  const auto i_d = static_cast<double>(i);
  const auto e = static_cast<double>(d - a);
  return std::pow(down, i_d) * std::pow(up, e) - std::pow(up, i_d) * std::pow(down, e);
}

double w_of_cascade(const std::vector<std::int64_t> &a, std::int32_t d, double b) {
  if (a.empty())
    throw InvalidParameters("cascade sequence is empty");
  if (a[0] > d - 1)
    throw InvalidParameters("cascade sequence needs a_0 <= d - 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < static_cast<std::int64_t>(i) || (i > 0 && a[i] > a[i - 1]))
      throw InvalidParameters("cascade sequence must be non-increasing with a_i >= i");
    sum += S_term(static_cast<std::int64_t>(i), a[i], d, b);
  }
  return sum;
}

} // namespace bksat::kk
