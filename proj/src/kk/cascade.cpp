#include <limits>

#include "bksat/kk.hpp"

namespace bksat::kk {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  __int128 c = 1;
  for (std::int64_t j = 0; j < k; ++j) {
    c = c * (n - j) / (j + 1);
    if (c > std::numeric_limits<std::int64_t>::max())
      throw LimitExceeded("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::int64_t>(c);
}

std::vector<std::int64_t> Cascade::textbook() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(a[i] - static_cast<std::int64_t>(i));
  return out;
}

Cascade cascade_decompose(std::int64_t N, std::int32_t r) {
  if (N < 1)
    throw InvalidParameters("cascade needs N >= 1");
  if (r < 1)
    throw InvalidParameters("cascade needs r >= 1");
  Cascade c;
  c.r = r;
  std::int64_t rest = N;
  for (std::int32_t i = 0; rest > 0; ++i) {
    const std::int32_t rank = r - i;
    // rank 1 always absorbs the remainder, so the loop ends by then.
    std::int64_t m = rank;
    while (binomial(m + 1, rank) <= rest)
      ++m;
    c.a.push_back(m + i);
    rest -= binomial(m, rank);
  }
  return c;
}

std::int64_t cascade_value(const Cascade &c) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    const auto ii = static_cast<std::int64_t>(i);
    sum += binomial(c.a[i] - ii, c.r - ii);
  }
  return sum;
}

std::int64_t shadow_bound(const Cascade &c) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    const auto ii = static_cast<std::int64_t>(i);
    sum += binomial(c.a[i] - ii, c.r - ii + 1);
  }
  return sum;
}

std::int64_t shadow_bound(std::int64_t N, std::int32_t r) {
  if (N < 0)
    throw InvalidParameters("N must be non-negative");
  return N == 0 ? 0 : shadow_bound(cascade_decompose(N, r));
}

bool fvector_valid(const FVector &fv) {
  const auto &f = fv.f;
  for (auto x : f)
    if (x < 0)
      return false;
  if (f.empty())
    return true;
  if (f[0] > 1)
    return false;
  if (f[0] == 0) {
    for (auto x : f)
      if (x != 0)
        return false;
    return true;
  }
  for (std::size_t s = 2; s < f.size(); ++s)
    if (f[s] > shadow_bound(f[s - 1], static_cast<std::int32_t>(s - 1)))
      return false;
  return true;
}

namespace {

void check_sequence(const std::vector<std::int64_t> &a) {
  if (a.empty())
    throw InvalidParameters("cascade sequence is empty");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < static_cast<std::int64_t>(i))
      throw InvalidParameters("cascade term a_i - i must be non-negative");
    if (i > 0 && a[i] > a[i - 1])
      throw InvalidParameters("cascade sequence must be non-increasing");
  }
}

} // namespace

std::vector<std::int64_t> f_of_cascade(const std::vector<std::int64_t> &a, std::int32_t d) {
  check_sequence(a);
  std::vector<std::int64_t> f(static_cast<std::size_t>(d) + 1, 0);
  for (std::int32_t r = 0; r <= d; ++r)
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ii = static_cast<std::int64_t>(i);
      f[static_cast<std::size_t>(r)] += binomial(a[i] - ii, r - ii);
    }
  return f;
}

std::int64_t cascade_complex_size(const std::vector<std::int64_t> &a) {
  check_sequence(a);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto e = a[i] - static_cast<std::int64_t>(i);
    if (e >= 62)
      throw LimitExceeded("complex size overflows 64 bits");
    sum += std::int64_t{1} << e;
  }
  return sum;
}

} // namespace bksat::kk
