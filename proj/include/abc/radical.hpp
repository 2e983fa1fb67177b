#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace abc {

// rad(n) for every 1 <= n <= limit, built once and then read-only. Safe to
// share between threads.
class RadicalTable {
 public:
  RadicalTable() = default;

  std::uint64_t limit() const noexcept { return rad_.empty() ? 0 : rad_.size() - 1; }

  // rad(n) for 1 <= n <= limit(); unchecked.
  std::uint64_t operator[](std::uint64_t n) const noexcept { return rad_[n]; }

  // Entry n holds rad(n); entry 0 is an unused placeholder.
  std::span<const std::uint32_t> values() const noexcept { return rad_; }

  // Table lookup when n <= limit(), factorization otherwise.
  std::uint64_t radical(std::uint64_t n) const;

 private:
  friend RadicalTable build_radical_table(std::uint64_t limit);
  std::vector<std::uint32_t> rad_;
};

// Smallest-prime-factor sieve followed by rad(n) = p * rad(n / p^v).
// Throws ArgumentError for limit = 0 and ResourceError if the table cannot be
// allocated or limit does not fit the 32-bit entries.
RadicalTable build_radical_table(std::uint64_t limit);

// Product of the distinct primes dividing n. Throws ArgumentError for n = 0.
std::uint64_t radical(std::uint64_t n);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

// Prime factorization as ascending (prime, multiplicity) pairs; empty for n = 1.
// Trial division for small factors, then deterministic Pollard-Brent on a
// composite cofactor. Throws ArgumentError for n = 0.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace abc
