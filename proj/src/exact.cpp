#include "abc/exact.hpp"

#include <limits>

#include "abc/errors.hpp"

namespace abc {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

// The cpp_int string constructor reads a leading 0 as an octal prefix.
BigInt from_digits(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return BigInt{std::string(digits.substr(first))};
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ArgumentError("malformed integer '" + std::string(s) + "'");
  }
  BigInt value = from_digits(s);
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(parse_integer(text));
    }
    const BigInt num = parse_integer(text.substr(0, slash));
    const std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw ArgumentError("malformed denominator");
    }
    const BigInt den = from_digits(den_text);
    if (den == 0) throw ArgumentError("zero denominator");
    return Rational(num, den);
  } catch (const ArgumentError&) {
    throw ArgumentError("malformed rational '" + std::string(text) + "' (expected p or p/q)");
  }
}

Rational decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string digits(text.substr(0, dot));
  BigInt scale = 1;
  if (dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  }
  if (!all_digits(digits)) {
    throw ArgumentError("malformed decimal '" + std::string(text) + "'");
  }
  Rational value(from_digits(digits), scale);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& value, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = value < 0;
  const Rational mag = negative ? Rational(-value) : value;
  // round half up on the magnitude
  const BigInt scaled = floor(mag * scale + Rational(1, 2));
  const BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string frac_text = frac.str();
  if (digits > 0) {
    frac_text.insert(0, static_cast<std::size_t>(digits) - frac_text.size(), '0');
  }
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole.str();
  if (digits > 0) out += "." + frac_text;
  return out;
}

BigInt floor(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  BigInt q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q;
}

BigInt power(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

BigInt floor_root(const BigInt& n, unsigned k) {
  if (n < 0) throw ArgumentError("floor_root of a negative number");
  if (k == 0) throw ArgumentError("floor_root with k = 0");
  if (n < 2 || k == 1) return n;
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= k) return 1;  // 2^k > n >= 2^(bits-1) >= 1
  // Newton iteration from an overestimate decreases monotonically to the floor.
  BigInt x = BigInt(1) << ((bits + k - 1) / k);
  while (true) {
    const BigInt y = ((k - 1) * x + n / power(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  while (power(x, k) > n) --x;
  while (power(x + 1, k) <= n) ++x;
  return x;
}

std::uint64_t saturate_u64(const BigInt& value) {
  if (value <= 0) return 0;
  if (value >= std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return value.convert_to<std::uint64_t>();
}

std::uint64_t max_base_pow_le(const BigInt& base, unsigned p, unsigned q) {
  if (p == 0 || q == 0) throw ArgumentError("exponent parts must be positive");
  if (base < 0) throw ArgumentError("negative base");
  return saturate_u64(floor_root(power(base, p), q));
}

std::uint64_t max_base_pow_lt(const BigInt& base, unsigned p, unsigned q) {
  if (p == 0 || q == 0) throw ArgumentError("exponent parts must be positive");
  if (base < 1) throw ArgumentError("base must be at least 1");
  return saturate_u64(floor_root(power(base, p) - 1, q));
}

ExponentParts exponent_parts(const Rational& exponent) {
  if (exponent <= 0) throw ArgumentError("exponent must be positive, got " + to_string(exponent));
  const BigInt num = numerator(exponent);
  const BigInt den = denominator(exponent);
  const BigInt limit = std::numeric_limits<std::uint32_t>::max();
  if (num > limit || den > limit) {
    throw ArgumentError("exponent " + to_string(exponent) + " has parts wider than 32 bits");
  }
  return {num.convert_to<unsigned>(), den.convert_to<unsigned>()};
}

std::uint64_t floor_scaled_power(const BigInt& base, const Rational& exponent, unsigned scale) {
  if (exponent == 0) return scale;
  const auto [p, q] = exponent_parts(exponent);
  return saturate_u64(floor_root(power(BigInt(scale), q) * power(base, p), q));
}

}  // namespace abc
