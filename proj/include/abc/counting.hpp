#pragma once

// Exact brute-force counts of the abc-type quantities. Every count has two
// independent enumeration strategies; both are exposed so callers and tests
// can cross-check them.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abc/exact.hpp"

namespace abc {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

struct CountOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t budget = kDefaultBudget;
};

struct CountResult {
  std::string function;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t count = 0;
  std::string strategy;
  double elapsed_seconds = 0.0;
  unsigned threads = 1;
  std::vector<std::string> notes;
};

enum class PairStrategy {
  by_c,  // outer loop over c, inner over a; radical thresholds via integer roots
  by_a,  // outer loop over a, inner over b; direct power comparison per pair
};

// Triples (a, b, c) in [1, X]^3 with gcd 1, a + b = c and rad(abc) < c^lambda.
// Unordered mode counts a <= b only.
CountResult count_exceptional_triples(std::uint64_t X, const Rational& lambda, bool ordered,
                                      PairStrategy strategy = PairStrategy::by_c,
                                      const CountOptions& options = {});

// star = false: coprime a + b = c <= X with rad(a) <= a^alpha, rad(b) <= b^beta,
// rad(c) <= c^gamma.
// star = true: c in [ceil(X/2), X] and rad(a) in (X^alpha, 2 X^alpha], likewise
// for b and c.
CountResult count_S(std::uint64_t X, const Rational& alpha, const Rational& beta,
                    const Rational& gamma, bool star, PairStrategy strategy = PairStrategy::by_c,
                    const CountOptions& options = {});

enum class RadicalCountStrategy {
  table_scan,       // sieve table, compare each rad(n)
  radical_classes,  // enumerate squarefree r and the n <= x with rad(n) = r
};

// #{n <= x : rad(n) <= x^lambda}
CountResult count_radical_bounded(std::uint64_t x, const Rational& lambda,
                                  RadicalCountStrategy strategy = RadicalCountStrategy::table_scan,
                                  const CountOptions& options = {});

// Dyadic boxes x_i in (X_i, 2 X_i] for the equation
//   c1 prod x_j^j + c2 prod y_j^j = c3 prod z_j^j.
struct BoxSpec {
  int d = 1;
  std::array<std::int64_t, 3> coefficients{1, 1, 1};
  std::vector<Rational> X, Y, Z;
  std::optional<Rational> A;

  // max_i X_i Y_i Z_i
  Rational delta() const;
  // anchors all >= 1 and coefficients pairwise coprime
  bool standard_form() const;
};

// Throws ArgumentError when the box is malformed or violates |c_i| <= Delta^A.
void validate(const BoxSpec& spec);

enum class BoxStrategy {
  meet_in_middle,  // sorted index of c3 * Z-products, loop over (x, y)
  nested,          // all (x, y, z) combinations
};

// Solutions with gcd(c1 prod x_j, c2 prod y_j, c3 prod z_j) = 1. Throws
// BudgetExceeded when the enumeration is larger than options.budget.
CountResult count_Bd(const BoxSpec& spec, BoxStrategy strategy = BoxStrategy::meet_in_middle,
                     const CountOptions& options = {});

// a1 x^p + a2 y^q + a3 z^r = 0 over non-zero |x| <= X, |y| <= Y, |z| <= Z,
// pairwise coprime.
struct TernaryQuery {
  unsigned p = 1, q = 1, r = 1;
  std::int64_t a1 = 1, a2 = 1, a3 = -1;
  std::uint64_t X = 1, Y = 1, Z = 1;
};

enum class TernaryStrategy {
  solve_for_z,  // loop (x, y), look z up in a table of r-th powers
  nested,       // loop (x, y, z)
};

CountResult count_ternary(const TernaryQuery& query,
                          TernaryStrategy strategy = TernaryStrategy::solve_for_z,
                          const CountOptions& options = {});

std::string to_string(PairStrategy s);
std::string to_string(RadicalCountStrategy s);
std::string to_string(BoxStrategy s);
std::string to_string(TernaryStrategy s);

}  // namespace abc
