#include "abc/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "abc/errors.hpp"
#include "abc/radical.hpp"
#include "parallel.hpp"

namespace abc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

BigInt to_big(u128 v) {
  BigInt out = static_cast<u64>(v >> 64);
  out <<= 64;
  out += static_cast<u64>(v);
  return out;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Sign of r^q - scale^q * base^p. A floating filter settles clear cases; near
// ties fall through to exact integer powers.
int compare_power(u128 r, unsigned q, u64 base, unsigned p, unsigned scale = 1) {
  const long double lhs = q * std::log(static_cast<long double>(r));
  const long double rhs = q * std::log(static_cast<long double>(scale)) +
                          p * std::log(static_cast<long double>(base));
  const long double tol = 1e-9L * (1.0L + std::fabs(lhs) + std::fabs(rhs));
  if (lhs < rhs - tol) return -1;
  if (lhs > rhs + tol) return 1;
  const BigInt left = power(to_big(r), q);
  const BigInt right = power(BigInt(scale), q) * power(BigInt(base), p);
  return left < right ? -1 : (left > right ? 1 : 0);
}

void check_budget(long double cost, u64 budget, const std::string& what) {
  if (cost > static_cast<long double>(budget)) {
    throw BudgetExceeded(what + " needs about " + std::to_string(static_cast<double>(cost)) +
                             " candidate evaluations, budget is " + std::to_string(budget),
                         cost, budget);
  }
}

u64 ceil_half(u64 X) { return X / 2 + X % 2; }

struct Window {
  u64 lo_exclusive;  // floor(X^e)
  u64 hi_inclusive;  // floor(2 X^e)
  bool contains(u64 r) const { return r > lo_exclusive && r <= hi_inclusive; }
};

Window dyadic_window(u64 X, const Rational& e) {
  const auto [p, q] = exponent_parts(e);
  return {max_base_pow_le(X, p, q), floor_scaled_power(X, e, 2)};
}

}  // namespace

std::string to_string(PairStrategy s) { return s == PairStrategy::by_c ? "by-c" : "by-a"; }
std::string to_string(RadicalCountStrategy s) {
  return s == RadicalCountStrategy::table_scan ? "table-scan" : "radical-classes";
}
std::string to_string(BoxStrategy s) { return s == BoxStrategy::meet_in_middle ? "meet-in-middle" : "nested"; }
std::string to_string(TernaryStrategy s) { return s == TernaryStrategy::solve_for_z ? "solve-for-z" : "nested"; }

CountResult count_exceptional_triples(u64 X, const Rational& lambda, bool ordered, PairStrategy strategy,
                                      const CountOptions& options) {
  Stopwatch clock;
  const auto [p, q] = exponent_parts(lambda);
  CountResult res;
  res.function = "nlambda";
  res.parameters = {{"X", std::to_string(X)}, {"lambda", to_string(lambda)},
                    {"ordered", ordered ? "true" : "false"}};
  res.strategy = to_string(strategy);
  res.threads = detail::resolve_workers(options.threads);
  if (X < 2) {
    res.elapsed_seconds = clock.seconds();
    return res;
  }
  check_budget(static_cast<long double>(X) * (X - 1) / 2, options.budget, "nlambda");
  const RadicalTable table = build_radical_table(X);

  if (strategy == PairStrategy::by_c) {
    res.count = detail::parallel_sum(X - 1, res.threads, [&](u64 i) -> u64 {
      const u64 c = i + 2;
      const u64 threshold = max_base_pow_lt(c, p, q);  // rad(abc) <= threshold  <=>  rad(abc) < c^lambda
      const u128 rc = table[c];
      const u64 a_max = ordered ? c - 1 : c / 2;
      u64 n = 0;
      for (u64 a = 1; a <= a_max; ++a) {
        const u64 b = c - a;
        if (std::gcd(a, b) != 1) continue;
        if (rc * table[a] * table[b] <= threshold) ++n;
      }
      return n;
    });
  } else {
    res.count = detail::parallel_sum(X - 1, res.threads, [&](u64 i) -> u64 {
      const u64 a = i + 1;
      u64 n = 0;
      for (u64 b = ordered ? 1 : a; a + b <= X; ++b) {
        if (std::gcd(a, b) != 1) continue;
        const u64 c = a + b;
        const u128 r = static_cast<u128>(table[a]) * table[b] * table[c];
        if (compare_power(r, q, c, p) < 0) ++n;
      }
      return n;
    });
  }
  res.elapsed_seconds = clock.seconds();
  return res;
}

CountResult count_S(u64 X, const Rational& alpha, const Rational& beta, const Rational& gamma, bool star,
                    PairStrategy strategy, const CountOptions& options) {
  Stopwatch clock;
  const std::array<ExponentParts, 3> parts{exponent_parts(alpha), exponent_parts(beta), exponent_parts(gamma)};
  CountResult res;
  res.function = star ? "s-star" : "s";
  res.parameters = {{"X", std::to_string(X)},
                    {"alpha", to_string(alpha)},
                    {"beta", to_string(beta)},
                    {"gamma", to_string(gamma)},
                    {"star", star ? "true" : "false"}};
  res.strategy = to_string(strategy);
  res.threads = detail::resolve_workers(options.threads);
  if (X < 2) {
    res.elapsed_seconds = clock.seconds();
    return res;
  }
  check_budget(static_cast<long double>(X) * (X - 1) / 2, options.budget, "S count");
  const RadicalTable table = build_radical_table(X);
  const u64 c_min = star ? std::max<u64>(2, ceil_half(X)) : 2;

  if (star) {
    const std::array<Window, 3> win{dyadic_window(X, alpha), dyadic_window(X, beta), dyadic_window(X, gamma)};
    if (strategy == PairStrategy::by_c) {
      res.count = detail::parallel_sum(X - c_min + 1, res.threads, [&](u64 i) -> u64 {
        const u64 c = c_min + i;
        if (!win[2].contains(table[c])) return 0;
        u64 n = 0;
        for (u64 a = 1; a < c; ++a) {
          const u64 b = c - a;
          if (std::gcd(a, b) == 1 && win[0].contains(table[a]) && win[1].contains(table[b])) ++n;
        }
        return n;
      });
    } else {
      // (X^e, 2 X^e] membership by comparing rad^q against X^p and 2^q X^p
      auto inside = [&](u64 rad, int k) {
        const auto [p, q] = parts[k];
        return compare_power(rad, q, X, p) > 0 && compare_power(rad, q, X, p, 2) <= 0;
      };
      res.count = detail::parallel_sum(X - 1, res.threads, [&](u64 i) -> u64 {
        const u64 a = i + 1;
        if (!inside(table[a], 0)) return 0;
        u64 n = 0;
        for (u64 b = 1; a + b <= X; ++b) {
          const u64 c = a + b;
          if (c < c_min || std::gcd(a, b) != 1) continue;
          if (inside(table[b], 1) && inside(table[c], 2)) ++n;
        }
        return n;
      });
    }
  } else if (strategy == PairStrategy::by_c) {
    std::array<std::vector<char>, 3> ok;
    for (int k = 0; k < 3; ++k) {
      ok[k].assign(X + 1, 0);
      for (u64 n = 1; n <= X; ++n) {
        ok[k][n] = table[n] <= max_base_pow_le(n, parts[k].num, parts[k].den);
      }
    }
    res.count = detail::parallel_sum(X - 1, res.threads, [&](u64 i) -> u64 {
      const u64 c = i + 2;
      if (!ok[2][c]) return 0;
      u64 n = 0;
      for (u64 a = 1; a < c; ++a) {
        const u64 b = c - a;
        if (std::gcd(a, b) == 1 && ok[0][a] && ok[1][b]) ++n;
      }
      return n;
    });
  } else {
    auto bounded = [&](u64 v, int k) { return compare_power(table[v], parts[k].den, v, parts[k].num) <= 0; };
    res.count = detail::parallel_sum(X - 1, res.threads, [&](u64 i) -> u64 {
      const u64 a = i + 1;
      if (!bounded(a, 0)) return 0;
      u64 n = 0;
      for (u64 b = 1; a + b <= X; ++b) {
        if (std::gcd(a, b) != 1) continue;
        if (bounded(b, 1) && bounded(a + b, 2)) ++n;
      }
      return n;
    });
  }
  res.elapsed_seconds = clock.seconds();
  return res;
}

namespace {

// #{m <= bound : every prime factor of m is in primes[from..]}
u64 count_supported(u64 bound, const std::vector<u64>& primes, std::size_t from) {
  if (from == primes.size()) return bound >= 1 ? 1 : 0;
  u64 total = count_supported(bound, primes, from + 1);
  const u64 p = primes[from];
  for (u64 pk = p; pk <= bound; pk *= p) {
    total += count_supported(bound / pk, primes, from + 1);
    if (pk > bound / p) break;
  }
  return total;
}

void radical_classes(u64 x, u64 r_limit, const std::vector<u64>& primes, std::size_t start, u64 r,
                     std::vector<u64>& used, u64& total) {
  total += count_supported(x / r, used, 0) ;
  for (std::size_t i = start; i < primes.size(); ++i) {
    const u64 p = primes[i];
    if (r > r_limit / p) break;
    used.push_back(p);
    radical_classes(x, r_limit, primes, i + 1, r * p, used, total);
    used.pop_back();
  }
}

}  // namespace

CountResult count_radical_bounded(u64 x, const Rational& lambda, RadicalCountStrategy strategy,
                                  const CountOptions& options) {
  Stopwatch clock;
  if (x < 1) throw ArgumentError("count_radical_bounded needs x >= 1");
  const auto [p, q] = exponent_parts(lambda);
  CountResult res;
  res.function = "debruijn";
  res.parameters = {{"x", std::to_string(x)}, {"lambda", to_string(lambda)}};
  res.strategy = to_string(strategy);
  res.threads = 1;
  check_budget(static_cast<long double>(x), options.budget, "radical-bounded count");
  const u64 threshold = max_base_pow_le(x, p, q);  // rad(n) <= x^lambda  <=>  rad(n) <= threshold

  if (strategy == RadicalCountStrategy::table_scan) {
    const RadicalTable table = build_radical_table(x);
    for (u64 n = 1; n <= x; ++n) {
      if (table[n] <= threshold) ++res.count;
    }
  } else {
    const u64 r_limit = std::min(threshold, x);
    std::vector<char> composite(r_limit + 1, 0);
    std::vector<u64> primes;
    for (u64 i = 2; i <= r_limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (u64 j = i * i; j <= r_limit; j += i) composite[j] = 1;
    }
    std::vector<u64> used;
    radical_classes(x, r_limit, primes, 0, 1, used, res.count);
  }
  res.elapsed_seconds = clock.seconds();
  return res;
}

Rational BoxSpec::delta() const {
  Rational best = 0;
  for (int i = 0; i < d; ++i) best = std::max(best, Rational(X[i] * Y[i] * Z[i]));
  return best;
}

bool BoxSpec::standard_form() const {
  for (int i = 0; i < d; ++i) {
    if (X[i] < 1 || Y[i] < 1 || Z[i] < 1) return false;
  }
  const auto& c = coefficients;
  auto g = [](std::int64_t u, std::int64_t v) { return std::gcd(u, v); };
  return g(c[0], c[1]) == 1 && g(c[0], c[2]) == 1 && g(c[1], c[2]) == 1;
}

void validate(const BoxSpec& spec) {
  if (spec.d < 1) throw ArgumentError("BoxSpec needs d >= 1");
  const auto d = static_cast<std::size_t>(spec.d);
  if (spec.X.size() != d || spec.Y.size() != d || spec.Z.size() != d) {
    throw ArgumentError("BoxSpec anchor arrays must have length d");
  }
  for (const auto* v : {&spec.X, &spec.Y, &spec.Z}) {
    for (const auto& r : *v) {
      if (r <= 0) throw ArgumentError("BoxSpec anchors must be positive");
    }
  }
  for (auto c : spec.coefficients) {
    if (c == 0) throw ArgumentError("BoxSpec coefficients must be non-zero");
  }
  if (spec.A) {
    const Rational& A = *spec.A;
    if (A < 0) throw ArgumentError("BoxSpec A must be non-negative");
    const Rational delta = spec.delta();
    const unsigned ap = numerator(A).convert_to<unsigned>();
    const unsigned aq = denominator(A).convert_to<unsigned>();
    // |c| <= Delta^(ap/aq)  <=>  |c|^aq * den^ap <= num^ap
    const BigInt lhs_scale = power(denominator(delta), ap);
    const BigInt rhs = power(numerator(delta), ap);
    for (auto c : spec.coefficients) {
      const BigInt mag = c < 0 ? BigInt(-BigInt(c)) : BigInt(c);
      if (power(mag, aq) * lhs_scale > rhs) {
        throw ArgumentError("coefficient " + std::to_string(c) + " exceeds Delta^A");
      }
    }
  }
}

namespace {

struct TupleValue {
  i128 value;     // coefficient * prod x_j^j
  u128 gcd_part;  // |coefficient| * prod x_j
};

struct Range {
  u64 lo, hi;  // inclusive; empty when lo > hi
};

Range dyadic_range(const Rational& anchor) {
  const BigInt lo = floor(anchor) + 1;
  const BigInt hi = floor(anchor * 2);
  const BigInt cap = BigInt(1) << 62;
  if (hi > cap) throw ResourceError("dyadic anchor " + to_string(anchor) + " is too large to enumerate");
  return {lo.convert_to<u64>(), hi.convert_to<u64>()};
}

std::vector<TupleValue> enumerate_box(const std::vector<Rational>& anchors, std::int64_t coefficient,
                                      u64 max_tuples, const std::string& label) {
  std::vector<Range> ranges;
  BigInt tuples = 1;
  BigInt magnitude = coefficient < 0 ? BigInt(-BigInt(coefficient)) : BigInt(coefficient);
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    const Range r = dyadic_range(anchors[j]);
    if (r.lo > r.hi) return {};
    ranges.push_back(r);
    tuples *= (r.hi - r.lo + 1);
    magnitude *= power(BigInt(r.hi), static_cast<unsigned>(j + 1));
  }
  if (magnitude >= BigInt(1) << 124) {
    throw ResourceError("box " + label + " values exceed 124 bits");
  }
  if (tuples > max_tuples) {
    throw BudgetExceeded("box " + label + " has " + tuples.str() + " tuples", tuples.convert_to<long double>(),
                         max_tuples);
  }
  std::vector<TupleValue> out;
  out.reserve(tuples.convert_to<std::size_t>());
  const u128 mag_c = static_cast<u128>(coefficient < 0 ? -static_cast<i128>(coefficient) : coefficient);
  std::vector<u64> x(ranges.size());
  for (std::size_t j = 0; j < ranges.size(); ++j) x[j] = ranges[j].lo;
  while (true) {
    u128 prod_pow = 1, prod = 1;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (std::size_t e = 0; e <= j; ++e) prod_pow *= x[j];
      prod *= x[j];
    }
    out.push_back({static_cast<i128>(prod_pow) * coefficient, prod * mag_c});
    std::size_t j = 0;
    while (j < x.size() && x[j] == ranges[j].hi) {
      x[j] = ranges[j].lo;
      ++j;
    }
    if (j == x.size()) break;
    ++x[j];
  }
  return out;
}

}  // namespace

CountResult count_Bd(const BoxSpec& spec, BoxStrategy strategy, const CountOptions& options) {
  Stopwatch clock;
  validate(spec);
  CountResult res;
  res.function = "bd";
  res.parameters = {{"d", std::to_string(spec.d)},
                    {"c", std::to_string(spec.coefficients[0]) + "," + std::to_string(spec.coefficients[1]) +
                              "," + std::to_string(spec.coefficients[2])},
                    {"delta", to_string(spec.delta())}};
  res.strategy = to_string(strategy);
  res.threads = detail::resolve_workers(options.threads);
  if (!spec.standard_form()) res.notes.push_back("toy instance: anchors below 1 or coefficients not coprime");

  constexpr u64 kMaxTuples = 20'000'000;
  const u64 cap = std::min(kMaxTuples, options.budget);
  const auto xs = enumerate_box(spec.X, spec.coefficients[0], cap, "X");
  const auto ys = enumerate_box(spec.Y, spec.coefficients[1], cap, "Y");
  auto zs = enumerate_box(spec.Z, spec.coefficients[2], cap, "Z");
  const long double nx = xs.size(), ny = ys.size(), nz = zs.size();
  check_budget(strategy == BoxStrategy::nested ? nx * ny * nz : nx * ny + nz, options.budget, "B_d count");

  auto coprime = [](const TupleValue& x, const TupleValue& y, const TupleValue& z) {
    return gcd128(gcd128(x.gcd_part, y.gcd_part), z.gcd_part) == 1;
  };

  if (strategy == BoxStrategy::meet_in_middle) {
    std::sort(zs.begin(), zs.end(), [](const TupleValue& l, const TupleValue& r) { return l.value < r.value; });
    res.count = detail::parallel_sum(xs.size(), res.threads, [&](u64 i) -> u64 {
      u64 n = 0;
      for (const auto& y : ys) {
        const i128 target = xs[i].value + y.value;
        auto it = std::lower_bound(zs.begin(), zs.end(), target,
                                   [](const TupleValue& z, i128 t) { return z.value < t; });
        for (; it != zs.end() && it->value == target; ++it) {
          if (coprime(xs[i], y, *it)) ++n;
        }
      }
      return n;
    });
  } else {
    res.count = detail::parallel_sum(xs.size(), res.threads, [&](u64 i) -> u64 {
      u64 n = 0;
      for (const auto& y : ys) {
        for (const auto& z : zs) {
          if (xs[i].value + y.value == z.value && coprime(xs[i], y, z)) ++n;
        }
      }
      return n;
    });
  }
  res.elapsed_seconds = clock.seconds();
  return res;
}

CountResult count_ternary(const TernaryQuery& tq, TernaryStrategy strategy, const CountOptions& options) {
  Stopwatch clock;
  if (tq.p < 1 || tq.q < 1 || tq.r < 1) throw ArgumentError("ternary exponents must be >= 1");
  if (tq.a1 == 0 || tq.a2 == 0 || tq.a3 == 0) throw ArgumentError("ternary coefficients must be non-zero");
  if (tq.X < 1 || tq.Y < 1 || tq.Z < 1) throw ArgumentError("ternary bounds must be >= 1");
  for (auto [coef, bound, e] : {std::tuple{tq.a1, tq.X, tq.p}, std::tuple{tq.a2, tq.Y, tq.q},
                                std::tuple{tq.a3, tq.Z, tq.r}}) {
    const BigInt mag = power(BigInt(bound), e) * (coef < 0 ? BigInt(-BigInt(coef)) : BigInt(coef));
    if (mag >= BigInt(1) << 124) throw ResourceError("ternary values exceed 124 bits");
  }

  CountResult res;
  res.function = "ternary";
  res.parameters = {{"p", std::to_string(tq.p)},   {"q", std::to_string(tq.q)},   {"r", std::to_string(tq.r)},
                    {"a1", std::to_string(tq.a1)}, {"a2", std::to_string(tq.a2)}, {"a3", std::to_string(tq.a3)},
                    {"X", std::to_string(tq.X)},   {"Y", std::to_string(tq.Y)},   {"Z", std::to_string(tq.Z)}};
  res.strategy = to_string(strategy);
  res.threads = detail::resolve_workers(options.threads);
  const long double cost = strategy == TernaryStrategy::nested ? 8.0L * tq.X * tq.Y * tq.Z : 4.0L * tq.X * tq.Y;
  check_budget(cost, options.budget, "ternary count");

  auto powers = [](u64 bound, unsigned e) {
    std::vector<u128> out(bound + 1, 0);
    for (u64 v = 1; v <= bound; ++v) {
      u128 acc = 1;
      for (unsigned k = 0; k < e; ++k) acc *= v;
      out[v] = acc;
    }
    return out;
  };
  const auto xp = powers(tq.X, tq.p);
  const auto yp = powers(tq.Y, tq.q);
  const auto zp = powers(tq.Z, tq.r);
  auto signed_power = [](const std::vector<u128>& table, u64 v, int sign, unsigned e) {
    const i128 mag = static_cast<i128>(table[v]);
    return (sign < 0 && e % 2 == 1) ? -mag : mag;
  };

  if (strategy == TernaryStrategy::solve_for_z) {
    res.count = detail::parallel_sum(tq.X, res.threads, [&](u64 i) -> u64 {
      const u64 x = i + 1;
      u64 n = 0;
      for (u64 y = 1; y <= tq.Y; ++y) {
        if (std::gcd(x, y) != 1) continue;
        for (int sx : {1, -1}) {
          for (int sy : {1, -1}) {
            const i128 rest = -(tq.a1 * signed_power(xp, x, sx, tq.p) + tq.a2 * signed_power(yp, y, sy, tq.q));
            if (rest % tq.a3 != 0) continue;
            const i128 w = rest / tq.a3;  // z^r must equal w
            if (w == 0) continue;
            const u128 m = static_cast<u128>(w < 0 ? -w : w);
            auto it = std::lower_bound(zp.begin() + 1, zp.end(), m);
            if (it == zp.end() || *it != m) continue;
            const u64 z = static_cast<u64>(it - zp.begin());
            if (std::gcd(x, z) != 1 || std::gcd(y, z) != 1) continue;
            if (w > 0) {
              n += tq.r % 2 == 0 ? 2 : 1;
            } else if (tq.r % 2 == 1) {
              n += 1;
            }
          }
        }
      }
      return n;
    });
  } else {
    res.count = detail::parallel_sum(tq.X, res.threads, [&](u64 i) -> u64 {
      const u64 x = i + 1;
      u64 n = 0;
      for (u64 y = 1; y <= tq.Y; ++y) {
        if (std::gcd(x, y) != 1) continue;
        for (u64 z = 1; z <= tq.Z; ++z) {
          if (std::gcd(x, z) != 1 || std::gcd(y, z) != 1) continue;
          for (int sx : {1, -1}) {
            for (int sy : {1, -1}) {
              for (int sz : {1, -1}) {
                const i128 sum = tq.a1 * signed_power(xp, x, sx, tq.p) + tq.a2 * signed_power(yp, y, sy, tq.q) +
                                 tq.a3 * signed_power(zp, z, sz, tq.r);
                if (sum == 0) ++n;
              }
            }
          }
        }
      }
      return n;
    });
  }
  res.elapsed_seconds = clock.seconds();
  return res;
}

}  // namespace abc
