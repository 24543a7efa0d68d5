#pragma once

// Exact integers and rationals on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace lcf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a/b" or "a". Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& r);

/// floor(r) as an integer.
Integer floor(const Rational& r);

Integer ipow(const Integer& base, unsigned long e);
Rational rpow(const Rational& base, unsigned long e);

/// Converts when |z| fits, throws otherwise.
std::int64_t to_int64(const Integer& z);

/// Largest e with p^e | n (n != 0).
unsigned long valuation(Integer n, unsigned long p);

double to_double(const Rational& r);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

} // namespace lcf
