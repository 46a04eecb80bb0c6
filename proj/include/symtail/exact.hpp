#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace symtail {

/// Arbitrary-precision nonnegative integer (binomial coefficients, subset counts).
using BigNatural = mpz_class;

/// Signed counterpart, used for floors, ceilings and lattice indices.
using BigInteger = mpz_class;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. Every probability in the library is one of these.
using ExactRational = mpq_class;

/// Parses "num/den", "num" or "-num/den". Throws SchemaError on malformed
/// text or a zero denominator. The result is canonicalized.
ExactRational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const ExactRational& q);

ExactRational pow2_inverse(unsigned k);  // 2^{-k}
BigNatural pow2(unsigned k);

BigInteger floor_int(const ExactRational& q);
BigInteger ceil_int(const ExactRational& q);
bool is_integer(const ExactRational& q);

/// Largest g > 0 with a/g and b/g both integers; gcd(0, b) = |b|.
ExactRational rational_gcd(const ExactRational& a, const ExactRational& b);

/// Exact rational rounded half-away-from-zero to `digits` significant
/// decimal digits, printed like printf("%.*g").
std::string to_decimal(const ExactRational& q, int digits = 12);

}  // namespace symtail
