#include "abc/radical.hpp"

#include <algorithm>
#include <limits>
#include <new>
#include <numeric>
#include <string>

#include "abc/errors.hpp"

namespace abc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Brent's variant with a fixed sequence of constants, so results are
// reproducible. n must be odd and composite.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 block = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_composite(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split_composite(d, primes);
  split_composite(n / d, primes);
}

}  // namespace

u64 gcd(u64 a, u64 b) noexcept { return std::gcd(a, b); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set for n < 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  if (n == 0) throw ArgumentError("factorize(0) is undefined");
  std::vector<std::pair<u64, unsigned>> out;
  auto take = [&](u64 p) {
    unsigned v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    if (v > 0) out.emplace_back(p, v);
  };
  take(2);
  take(3);
  constexpr u64 kTrialLimit = 1u << 16;
  for (u64 p = 5; p <= kTrialLimit && p * p <= n; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n == 1) return out;

  std::vector<u64> primes;
  split_composite(n, primes);
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.emplace_back(primes[i], static_cast<unsigned>(j - i));
    i = j;
  }
  return out;
}

u64 radical(u64 n) {
  if (n == 0) throw ArgumentError("rad(0) is undefined");
  u64 r = 1;
  for (const auto& [p, v] : factorize(n)) r *= p;
  return r;
}

u64 RadicalTable::radical(u64 n) const {
  if (n == 0) throw ArgumentError("rad(0) is undefined");
  if (n < rad_.size()) return rad_[n];
  return abc::radical(n);
}

RadicalTable build_radical_table(u64 limit) {
  if (limit == 0) throw ArgumentError("radical table limit must be at least 1");
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("radical table limit " + std::to_string(limit) + " exceeds 32-bit entries");
  }
  RadicalTable table;
  try {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (u64 i = 2; i <= limit; ++i) {
      if (spf[i] == 0) {
        spf[i] = static_cast<std::uint32_t>(i);
        primes.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes) {
        if (p > spf[i] || i * p > limit) break;
        spf[i * p] = p;
      }
    }
    table.rad_.assign(limit + 1, 0);
    if (limit >= 1) table.rad_[1] = 1;
    for (u64 n = 2; n <= limit; ++n) {
      const std::uint32_t p = spf[n];
      u64 m = n / p;
      while (m % p == 0) m /= p;
      table.rad_[n] = p * table.rad_[m];
    }
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate radical table up to " + std::to_string(limit));
  }
  return table;
}

}  // namespace abc
