#include <doctest.h>

#include "abc/errors.hpp"
#include "abc/power_factorization.hpp"
#include "abc/radical.hpp"

using namespace abc;

namespace {

bool only_ones_except(const PowerFactorization& pf, std::initializer_list<std::pair<std::size_t, std::uint64_t>> set) {
  for (std::size_t j = 1; j <= pf.parts.size(); ++j) {
    std::uint64_t want = 1;
    for (const auto& [idx, v] : set) {
      if (idx == j) want = v;
    }
    if (pf.part(j) != want) return false;
  }
  return true;
}

bool failed(const CheckResult& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return !c.pass;
  }
  return false;
}

}  // namespace

TEST_CASE("96 with epsilon 1/2") {
  const auto pf = power_factorize(96, 100, Rational(1, 2));
  CHECK(pf.K == 4);
  CHECK(pf.M == 40);
  CHECK(pf.c == 1);
  CHECK(only_ones_except(pf, {{1, 3}, {5, 2}}));
  CHECK(verify_power_factorization(pf).pass);
}

TEST_CASE("a prime lands in the first part") {
  const auto pf = power_factorize(97, 1000, Rational(3, 10));
  CHECK(pf.c == 1);
  CHECK(only_ones_except(pf, {{1, 97}}));
}

TEST_CASE("2^50 spills into the K-th part and the coefficient") {
  const std::uint64_t n = std::uint64_t{1} << 50;
  const auto pf = power_factorize(n, n, Rational(1, 2));
  CHECK(pf.part(4) == 4096);
  CHECK(pf.c == 4);
  CHECK(only_ones_except(pf, {{4, 4096}}));
  CHECK(verify_power_factorization(pf).pass);
}

TEST_CASE("squarefree n is its own first part") {
  for (std::uint64_t n : {2ULL, 6ULL, 30ULL, 2310ULL, 30030ULL}) {
    const auto pf = power_factorize(n, 100'000, Rational(1, 2));
    CHECK(pf.c == 1);
    CHECK(only_ones_except(pf, {{1, n}}));
  }
}

TEST_CASE("tampering is detected") {
  auto pf = power_factorize(96, 100, Rational(1, 2));
  auto bad = pf;
  bad.parts[0] = 6;
  const auto r1 = verify_power_factorization(bad);
  CHECK_FALSE(r1.pass);
  CHECK(failed(r1, "pairwise-coprime"));
  CHECK(failed(r1, "reconstruction"));

  bad = pf;
  bad.c *= pf.n;
  const auto r2 = verify_power_factorization(bad);
  CHECK_FALSE(r2.pass);
  CHECK(failed(r2, "c-bound"));
  CHECK_FALSE(r2.violations().empty());
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(power_factorize(1, 10, Rational(1, 2)), ArgumentError);
  CHECK_THROWS_AS(power_factorize(11, 10, Rational(1, 2)), ArgumentError);
  CHECK_THROWS_AS(power_factorize(5, 10, Rational(0)), ArgumentError);
  CHECK_THROWS_AS(power_factorize(5, 10, Rational(3, 5)), ArgumentError);
  CHECK_THROWS_AS(reduce_triple(2, 3, 6, 10, Rational(1)), ArgumentError);
  CHECK_THROWS_AS(reduce_triple(2, 4, 6, 10, Rational(1)), ArgumentError);
  CHECK_THROWS_AS(reduce_triple(2, 3, 5, 4, Rational(1)), ArgumentError);
}

TEST_CASE("every n up to 3000 passes for both epsilons") {
  // the full 10^5 sweep runs in the acceptance binary
  for (const Rational eps : {Rational(3, 10), Rational(1, 2)}) {
    for (std::uint64_t n = 2; n <= 3000; ++n) {
      CAPTURE(n);
      REQUIRE(verify_power_factorization(power_factorize(n, 100'000, eps)).pass);
    }
  }
}

TEST_CASE("determinism") {
  const auto a = power_factorize(123456, 200000, Rational(3, 10));
  const auto b = power_factorize(123456, 200000, Rational(3, 10));
  CHECK(a.parts == b.parts);
  CHECK(a.c == b.c);
}

TEST_CASE("triple reductions") {
  SUBCASE("(1, 8, 9)") {
    const auto tr = reduce_triple(1, 8, 9, 9, Rational(1));
    CHECK(tr.inner_epsilon == Rational(1, 2));
    CHECK(tr.fa.K == 4);
    CHECK(tr.fa.M == 40);
    CHECK(tr.c1() == 1);
    CHECK(only_ones_except(tr.fa, {}));
    CHECK(only_ones_except(tr.fb, {{3, 2}}));
    CHECK(only_ones_except(tr.fc, {{2, 3}}));
    CHECK(verify_triple_reduction(tr).pass);
  }
  SUBCASE("(5, 27, 32)") {
    const auto tr = reduce_triple(5, 27, 32, 32, Rational(1));
    CHECK(only_ones_except(tr.fa, {{1, 5}}));
    CHECK(only_ones_except(tr.fb, {{3, 3}}));
    CHECK(only_ones_except(tr.fc, {{5, 2}}));
    CHECK(verify_triple_reduction(tr).pass);
  }
  SUBCASE("(3, 125, 128)") {
    const auto tr = reduce_triple(3, 125, 128, 128, Rational(1));
    CHECK(only_ones_except(tr.fa, {{1, 3}}));
    CHECK(only_ones_except(tr.fb, {{3, 5}}));
    CHECK(only_ones_except(tr.fc, {{7, 2}}));
    CHECK(verify_triple_reduction(tr).pass);
  }
}

TEST_CASE("achieved coefficient bound on real triples") {
  // coefficients are at most X^(inner/2) = X^(eps^2/4), hence also at most X^eps
  const std::uint64_t X = 5000;
  const Rational eps(1, 2);
  const auto table = build_radical_table(X);
  int checked = 0;
  for (std::uint64_t c = 2; c <= X; ++c) {
    for (std::uint64_t a = 1; a <= c / 2; ++a) {
      const std::uint64_t b = c - a;
      if (gcd(a, b) != 1) continue;
      if (table[a] * table[b] * table[c] >= c) continue;  // keep only very exceptional triples
      const auto tr = reduce_triple(a, b, c, X, eps);
      CAPTURE(a);
      CAPTURE(c);
      CHECK(verify_triple_reduction(tr).pass);
      CHECK(coefficients_within(tr, eps * eps / 4));
      CHECK(coefficients_within(tr, eps));
      ++checked;
    }
  }
  CHECK(checked > 10);
}
