#include <doctest.h>

#include <numeric>

#include "abc/counting.hpp"
#include "abc/errors.hpp"
#include "abc/radical.hpp"

using namespace abc;

namespace {

CountOptions serial() {
  CountOptions o;
  o.threads = 1;
  return o;
}

// rad(m)^q < n^p, directly in big integers
bool rad_below(std::uint64_t m, std::uint64_t n, const Rational& lambda) {
  const auto e = exponent_parts(lambda);
  return power(BigInt(radical(m)), e.den) < power(BigInt(n), e.num);
}

std::uint64_t nlambda_oracle(std::uint64_t X, const Rational& lambda) {
  std::uint64_t count = 0;
  for (std::uint64_t c = 2; c <= X; ++c) {
    for (std::uint64_t a = 1; a < c; ++a) {
      if (std::gcd(a, c) == 1 && rad_below(a * (c - a) * c, c, lambda)) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("exceptional triples: documented values") {
  CHECK(count_exceptional_triples(1, Rational(1, 2), true).count == 0);
  CHECK(count_exceptional_triples(9, Rational(9, 10), true).count == 2);
  CHECK(count_exceptional_triples(9, Rational(9, 10), false).count == 1);
  CHECK(count_exceptional_triples(9, Rational(9, 10), true, PairStrategy::by_a).count == 2);
  CHECK_THROWS_AS(count_exceptional_triples(9, Rational(0), true), ArgumentError);
  CHECK_THROWS_AS(count_exceptional_triples(9, Rational(-1), true), ArgumentError);
}

TEST_CASE("exceptional triples: both strategies agree with a direct oracle") {
  for (std::uint64_t X : {1, 2, 17, 60, 150}) {
    for (const Rational lambda : {Rational(1, 3), Rational(1, 2), Rational(9, 10), Rational(1), Rational(6, 5)}) {
      CAPTURE(X);
      CAPTURE(lambda);
      const auto c = count_exceptional_triples(X, lambda, true, PairStrategy::by_c, serial()).count;
      const auto a = count_exceptional_triples(X, lambda, true, PairStrategy::by_a, serial()).count;
      CHECK(c == a);
      CHECK(c == nlambda_oracle(X, lambda));
      const auto u = count_exceptional_triples(X, lambda, false, PairStrategy::by_c, serial()).count;
      if (lambda <= 1) {
        CHECK(c % 2 == 0);
        CHECK(u * 2 == c);
      }
    }
  }
}

TEST_CASE("exceptional triples: monotone in X and lambda") {
  std::uint64_t prev = 0;
  for (std::uint64_t X = 1; X <= 120; X += 7) {
    const auto v = count_exceptional_triples(X, Rational(9, 10), true).count;
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0;
  for (int k = 1; k <= 12; ++k) {
    const auto v = count_exceptional_triples(100, Rational(k, 10), true).count;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("thread count does not change results") {
  CountOptions four;
  four.threads = 4;
  CHECK(count_exceptional_triples(300, Rational(1), true, PairStrategy::by_c, serial()).count ==
        count_exceptional_triples(300, Rational(1), true, PairStrategy::by_c, four).count);
  CHECK(count_radical_bounded(5000, Rational(2, 3), RadicalCountStrategy::table_scan, serial()).count ==
        count_radical_bounded(5000, Rational(2, 3), RadicalCountStrategy::table_scan, four).count);
}

TEST_CASE("S counts") {
  CHECK(count_S(5, Rational(1), Rational(1), Rational(1), false).count == 9);
  CHECK(count_S(4, Rational(1, 2), Rational(1, 2), Rational(1, 2), true).count == 0);
  CHECK(count_S(0, Rational(1), Rational(1), Rational(1), false).count == 0);
  // radical conditions vacuous at exponent 1: count coprime ordered pairs with a + b <= X
  for (std::uint64_t X : {10, 37, 80}) {
    std::uint64_t coprime = 0;
    for (std::uint64_t c = 2; c <= X; ++c) {
      for (std::uint64_t a = 1; a < c; ++a) coprime += std::gcd(a, c) == 1;
    }
    CHECK(count_S(X, Rational(1), Rational(1), Rational(1), false).count == coprime);
  }
  for (bool star : {false, true}) {
    for (std::uint64_t X : {30, 64, 101}) {
      const Rational al(1, 2), be(2, 3), ga(3, 4);
      CAPTURE(X);
      CAPTURE(star);
      CHECK(count_S(X, al, be, ga, star, PairStrategy::by_c).count ==
            count_S(X, al, be, ga, star, PairStrategy::by_a).count);
    }
  }
}

TEST_CASE("radical-bounded counts") {
  CHECK(count_radical_bounded(100, Rational(1, 2)).count == 30);
  CHECK(count_radical_bounded(100, Rational(1, 2), RadicalCountStrategy::radical_classes).count == 30);
  CHECK(count_radical_bounded(10, Rational(1, 1000)).count == 1);
  for (std::uint64_t x : {1, 2, 99, 1000}) CHECK(count_radical_bounded(x, Rational(1)).count == x);
  for (std::uint64_t x : {1, 50, 777, 4096}) {
    for (const Rational l : {Rational(1, 5), Rational(1, 2), Rational(3, 4)}) {
      CAPTURE(x);
      CAPTURE(l);
      const auto scan = count_radical_bounded(x, l, RadicalCountStrategy::table_scan).count;
      CHECK(scan == count_radical_bounded(x, l, RadicalCountStrategy::radical_classes).count);
      // rad(n) <= x^l  <=>  rad(n)^den <= x^num
      const auto e = exponent_parts(l);
      std::uint64_t direct = 0;
      for (std::uint64_t n = 1; n <= x; ++n) direct += power(BigInt(radical(n)), e.den) <= power(BigInt(x), e.num);
      CHECK(scan == direct);
    }
  }
  std::uint64_t prev = 0;
  for (std::uint64_t x = 1; x <= 2000; x += 97) {
    const auto v = count_radical_bounded(x, Rational(1, 2)).count;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("box counts: documented values") {
  BoxSpec s;
  s.d = 1;
  s.X = {Rational(1)};
  s.Y = {Rational(1)};
  s.Z = {Rational(1)};
  CHECK(count_Bd(s).count == 0);
  CHECK(count_Bd(s, BoxStrategy::nested).count == 0);
  s.Y = {Rational(2)};
  s.Z = {Rational(4)};
  CHECK(count_Bd(s).count == 1);
  CHECK(count_Bd(s, BoxStrategy::nested).count == 1);

  BoxSpec t;
  t.d = 2;
  t.X = {Rational(1), Rational(1)};
  t.Y = {Rational(1), Rational(1)};
  t.Z = {Rational(4), Rational(1)};
  CHECK(count_Bd(t).count == 0);
  CHECK(count_Bd(t, BoxStrategy::nested).count == 0);
}

TEST_CASE("box counts: strategies agree on generated specs") {
  std::uint64_t state = 12345;
  auto next = [&](std::uint64_t mod) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return (state >> 33) % mod;
  };
  int nonzero = 0;
  for (int t = 0; t < 60; ++t) {
    BoxSpec s;
    s.d = 1 + static_cast<int>(next(3));
    s.coefficients = {static_cast<std::int64_t>(1 + next(2)), 1, static_cast<std::int64_t>(1 + next(3))};
    for (int i = 0; i < s.d; ++i) {
      // the first position carries most of the size; z gets room for x + y
      const std::uint64_t cap = i == 0 ? 40 : 3;
      s.X.push_back(Rational(1 + next(cap), 1 + next(2)));
      s.Y.push_back(Rational(1 + next(cap), 1 + next(2)));
      s.Z.push_back(Rational(1 + next(i == 0 ? 4 * cap : cap), 1 + next(2)));
    }
    CAPTURE(t);
    const auto a = count_Bd(s, BoxStrategy::meet_in_middle).count;
    const auto b = count_Bd(s, BoxStrategy::nested).count;
    CHECK(a == b);
    nonzero += a > 0;
  }
  CHECK(nonzero > 5);
}

TEST_CASE("box counts: budget and validation") {
  BoxSpec s;
  s.d = 1;
  s.X = {Rational(100000)};
  s.Y = {Rational(100000)};
  s.Z = {Rational(100000)};
  CountOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(count_Bd(s, BoxStrategy::nested, tight), BudgetExceeded);
  BoxSpec bad = s;
  bad.X.clear();
  CHECK_THROWS_AS(validate(bad), ArgumentError);
  bad = s;
  bad.X = {Rational(-1)};
  CHECK_THROWS_AS(validate(bad), ArgumentError);
}

TEST_CASE("ternary counts") {
  TernaryQuery q;
  q.p = 2;
  q.q = 2;
  q.r = 1;
  q.X = 2;
  q.Y = 2;
  q.Z = 8;
  CHECK(count_ternary(q).count == 12);
  CHECK(count_ternary(q, TernaryStrategy::nested).count == 12);

  TernaryQuery even;
  even.p = 2;
  even.q = 4;
  even.r = 2;
  even.a3 = 1;
  even.X = even.Y = even.Z = 20;
  CHECK(count_ternary(even).count == 0);

  TernaryQuery lin;
  CHECK(count_ternary(lin).count == 0);

  for (unsigned p : {1u, 2u, 3u}) {
    for (unsigned r : {1u, 2u, 3u}) {
      TernaryQuery g;
      g.p = p;
      g.q = 2;
      g.r = r;
      g.a1 = 2;
      g.a2 = -3;
      g.a3 = 1;
      g.X = 12;
      g.Y = 9;
      g.Z = 30;
      CAPTURE(p);
      CAPTURE(r);
      CHECK(count_ternary(g).count == count_ternary(g, TernaryStrategy::nested).count);
    }
  }
}
