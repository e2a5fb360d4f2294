#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace bksat::bounds {

using Rational = boost::multiprecision::cpp_rational;

Rational binomial_exact(std::int64_t n, std::int64_t k);

/// q_exact in exact rational arithmetic with a rational bias p.
Rational q_exact_rational(std::int64_t i, std::int64_t n, std::int32_t k, const Rational &p);

/// pair_q_exact in exact rational arithmetic.
Rational pair_q_exact_rational(std::int64_t i, std::int64_t n, std::int64_t h, std::int32_t k,
                               const Rational &p);

} // namespace bksat::bounds
