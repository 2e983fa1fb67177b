#include <doctest.h>

#include <random>

#include "abc/errors.hpp"
#include "abc/radical.hpp"

using namespace abc;

namespace {

// Independent oracle: plain trial division.
std::uint64_t rad_oracle(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r *= p;
      while (n % p == 0) n /= p;
    }
  }
  return n > 1 ? r * n : r;
}

bool prime_oracle(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("radical examples") {
  CHECK(radical(1) == 1);
  CHECK(radical(30) == 30);
  CHECK(radical(96) == 6);
  CHECK(radical(72) == 6);
  CHECK_THROWS_AS(radical(0), ArgumentError);
}

TEST_CASE("small tables") {
  const auto t1 = build_radical_table(1);
  CHECK(t1.limit() == 1);
  CHECK(t1[1] == 1);
  const auto t10 = build_radical_table(10);
  const std::vector<std::uint64_t> expect{2, 3, 2, 5, 6, 7, 2, 3, 10};
  for (std::uint64_t n = 2; n <= 10; ++n) CHECK(t10[n] == expect[n - 2]);
  CHECK(build_radical_table(72)[72] == 6);
  CHECK_THROWS_AS(build_radical_table(0), ArgumentError);
  CHECK_THROWS_AS(t10.radical(0), ArgumentError);
}

TEST_CASE("sieve equals trial division up to 10^4") {
  const auto t = build_radical_table(10'000);
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    CAPTURE(n);
    REQUIRE(t[n] == rad_oracle(n));
    REQUIRE(radical(n) == t[n]);
  }
}

TEST_CASE("table lookups past the limit fall back to factorization") {
  const auto t = build_radical_table(100);
  CHECK(t.radical(1'000'000) == 10);
  CHECK(t.radical(97 * 97 * 101) == 97 * 101);
}

TEST_CASE("radical properties: idempotence, divisibility, multiplicativity") {
  const auto t = build_radical_table(20'000);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 5000; ++k) {
    const std::uint64_t m = 1 + rng() % 20'000;
    const std::uint64_t n = 1 + rng() % 20'000;
    CHECK(t.radical(t[n]) == t[n]);
    CHECK((n * t[n]) % (t[n] * t[n]) == 0);
    if (gcd(m, n) == 1) CHECK(radical(m * n) == t[m] * t[n]);
  }
}

TEST_CASE("is_prime matches trial division and known large primes") {
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    CAPTURE(n);
    REQUIRE(is_prime(n) == prime_oracle(n));
  }
  CHECK(is_prime(1'000'000'007ULL));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ULL));      // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(4294967291ULL * 4294967279ULL));
}

TEST_CASE("factorize reconstructs n and handles 64-bit semiprimes") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3000; ++k) {
    const std::uint64_t n = 1 + rng() % 5'000'000'000ULL;
    std::uint64_t back = 1, rad = 1, last = 0;
    for (const auto& [p, e] : factorize(n)) {
      CHECK(p > last);
      CHECK(prime_oracle(p));
      last = p;
      rad *= p;
      for (unsigned i = 0; i < e; ++i) back *= p;
    }
    CAPTURE(n);
    CHECK(back == n);
    CHECK(rad == radical(n));
  }
  const std::uint64_t p = 4294967291ULL, q = 4294967279ULL;
  const auto f = factorize(p * q);
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == q);
  CHECK(f[1].first == p);
  CHECK(radical(p * q) == p * q);
  CHECK(radical(p * p) == p);
  CHECK(factorize(1).empty());
  CHECK_THROWS_AS(factorize(0), ArgumentError);
}
