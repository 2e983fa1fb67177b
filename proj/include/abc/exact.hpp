#pragma once

// Exact integer and rational arithmetic shared by every module. Nothing in the
// toolkit decides an inequality in floating point; values cross module and
// process boundaries as "p/q" strings.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace abc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p" or "p/q" (optional leading '-', q > 0). Decimal notation is
// rejected so that no value is silently rounded. Throws ArgumentError.
Rational parse_rational(std::string_view text);

// Parses a terminating decimal literal such as "0.66" or "-0.005" exactly.
// Meant for constants in code, not for user input.
Rational decimal(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Rounded decimal rendering for human-readable output only.
std::string to_decimal(const Rational& value, int digits = 6);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

// Largest r >= 0 with r^k <= n (n >= 0, k >= 1).
BigInt floor_root(const BigInt& n, unsigned k);

BigInt power(const BigInt& base, unsigned exponent);

// Clamp to [0, UINT64_MAX].
std::uint64_t saturate_u64(const BigInt& value);

// Largest integer r >= 0 with r^q <= base^p (rad(n) <= n^(p/q) style tests),
// saturated to UINT64_MAX. Requires p, q >= 1 and base >= 0.
std::uint64_t max_base_pow_le(const BigInt& base, unsigned p, unsigned q);

// Largest integer r >= 0 with r^q < base^p, saturated. Requires base >= 1.
std::uint64_t max_base_pow_lt(const BigInt& base, unsigned p, unsigned q);

// Splits a positive rational exponent into unsigned (p, q). Throws
// ArgumentError if the value is not positive or the parts exceed 32 bits.
struct ExponentParts {
  unsigned num;
  unsigned den;
};
ExponentParts exponent_parts(const Rational& exponent);

// Largest r with r^q <= scale^q * base^p for a rational exponent p/q, i.e.
// floor(scale * base^(p/q)). Used for dyadic windows (x, 2x].
std::uint64_t floor_scaled_power(const BigInt& base, const Rational& exponent, unsigned scale);

}  // namespace abc
