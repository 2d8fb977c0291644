#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace semistab {

using Integer = mpz_class;
using Rational = mpq_class;

/// "a/b" form, or "a" when the denominator is one. Never decimal.
std::string to_string(const Rational& q);

/// Parses "a", "-a" or "a/b" (any sign placement gmp accepts). Throws Error(Schema).
Rational parse_rational(std::string_view text);

/// p-adic valuation of a nonzero integer / rational.
long padic_valuation(const Integer& n, long p);
long padic_valuation(const Rational& q, long p);

/// Largest integer <= q.
Integer floor(const Rational& q);

/// Residue class of q in [0, p); q must have non-negative p-adic valuation.
long residue_mod(const Rational& q, long p);

/// The canonical fraction num/den (den != 0).
Rational ratio(long num, long den);

/// Least common multiple of two positive machine integers.
long lcm(long a, long b);

}  // namespace semistab
