#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abc/exact.hpp"

namespace abc {

// n = c * prod_{j <= M} x_j^j with pairwise coprime parts. Parts are stored
// densely: parts[j - 1] is x_j, with explicit 1 entries.
struct PowerFactorization {
  std::uint64_t n = 1;
  std::uint64_t X = 1;
  Rational epsilon;
  std::uint64_t K = 0;  // 2 * ceil(1 / epsilon)
  std::uint64_t M = 0;  // floor(10 / epsilon^2)
  std::uint64_t c = 1;
  std::vector<std::uint64_t> parts;

  std::uint64_t part(std::size_t j) const { return parts.at(j - 1); }
};

struct NamedCheck {
  std::string name;
  bool pass = false;
};

struct CheckResult {
  bool pass = true;
  std::vector<NamedCheck> checks;

  std::vector<std::string> violations() const;
  void record(std::string name, bool ok);
};

// Largest M the dense part array is allowed to reach (epsilon >= ~1/316).
inline constexpr std::uint64_t kMaxPartCount = 1'000'000;

// Throws ArgumentError unless 2 <= n <= X and 0 < epsilon <= 1/2.
PowerFactorization power_factorize(std::uint64_t n, std::uint64_t X, const Rational& epsilon);

// Checks reconstruction, pairwise coprimality, c <= X^(eps/2), x_K <= X^(eps/2)
// and X^-eps * prod x_j <= rad(n) <= X^eps * prod x_j, all with integer powers.
// Malformed input is reported as failed checks, never thrown.
CheckResult verify_power_factorization(const PowerFactorization& pf);

struct TripleReduction {
  std::uint64_t a = 0, b = 0, c = 0;
  std::uint64_t X = 0;
  Rational epsilon;        // outer parameter
  Rational inner_epsilon;  // epsilon^2 / 2, handed to power_factorize
  PowerFactorization fa, fb, fc;

  std::uint64_t c1() const { return fa.c; }
  std::uint64_t c2() const { return fb.c; }
  std::uint64_t c3() const { return fc.c; }
};

// Factorizes each of a, b, c with epsilon^2 / 2. The value 1 maps to c = 1
// with every part equal to 1. Throws ArgumentError unless a + b = c,
// gcd(a, b) = 1, c <= X and 0 < epsilon <= 1.
TripleReduction reduce_triple(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t X,
                              const Rational& epsilon);

// Per-factorization checks plus the equation, coprime coefficients and
// pairwise coprimality of all parts across the three arrays.
CheckResult verify_triple_reduction(const TripleReduction& tr);

// Whether max(c1, c2, c3) <= X^bound_exponent, compared exactly.
bool coefficients_within(const TripleReduction& tr, const Rational& bound_exponent);

}  // namespace abc
