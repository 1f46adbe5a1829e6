#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prodrel {

// GMP keeps mpq_class canonical after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p", "-p", "p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

// num/den in lowest terms; den != 0.
Rational ratio(long num, long den);

// 2^e for any sign of e.
Rational pow2(long e);

BigInt binomial(unsigned long n, unsigned long k);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

} // namespace prodrel
