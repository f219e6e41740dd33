#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <vector>

namespace m23bkm {

using Integer = mpz_class;
using Rational = mpq_class;

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Positive divisors of n in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t sigma0(std::int64_t n);
std::int64_t sigma1(std::int64_t n);
int moebius(std::int64_t n);

// Python-style floor modulus, result in [0, m).
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

Rational make_rational(const Integer& num, const Integer& den);
Integer floor_rational(const Rational& x);
Integer ceil_rational(const Rational& x);
// Fractional part in [0, 1).
Rational frac(const Rational& x);

bool fits_int64(const Integer& x);
std::int64_t to_int64(const Integer& x);

}  // namespace m23bkm
