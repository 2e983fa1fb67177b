#include "abc/power_factorization.hpp"

#include <algorithm>
#include <numeric>

#include "abc/errors.hpp"
#include "abc/radical.hpp"

namespace abc {
namespace {

using u64 = std::uint64_t;

u64 k_for(const Rational& eps) { return 2 * ceil(Rational(1) / eps).convert_to<u64>(); }

u64 m_for(const Rational& eps) {
  const BigInt m = floor(Rational(10) / (eps * eps));
  if (m > kMaxPartCount) {
    throw ResourceError("epsilon " + to_string(eps) + " needs " + m.str() +
                        " dense parts; choose a larger epsilon");
  }
  return m.convert_to<u64>();
}

void check_epsilon(const Rational& eps, const Rational& upper) {
  if (eps <= 0 || eps > upper) {
    throw ArgumentError("epsilon must lie in (0, " + to_string(upper) + "], got " + to_string(eps));
  }
}

PowerFactorization unit_factorization(u64 X, const Rational& eps) {
  PowerFactorization pf;
  pf.n = 1;
  pf.X = X;
  pf.epsilon = eps;
  pf.K = k_for(eps);
  pf.M = m_for(eps);
  pf.c = 1;
  pf.parts.assign(pf.M, 1);
  return pf;
}

// value <= X^(num/den)  <=>  value^den <= X^num
bool le_power(const BigInt& value, u64 X, const Rational& exponent) {
  const BigInt num = numerator(exponent);
  const BigInt den = denominator(exponent);
  return power(value, den.convert_to<unsigned>()) <= power(BigInt(X), num.convert_to<unsigned>());
}

}  // namespace

std::vector<std::string> CheckResult::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

void CheckResult::record(std::string name, bool ok) {
  checks.push_back({std::move(name), ok});
  pass = pass && ok;
}

PowerFactorization power_factorize(u64 n, u64 X, const Rational& epsilon) {
  if (n < 2 || n > X) {
    throw ArgumentError("power_factorize needs 2 <= n <= X, got n=" + std::to_string(n) +
                        " X=" + std::to_string(X));
  }
  check_epsilon(epsilon, Rational(1, 2));

  PowerFactorization pf = unit_factorization(X, epsilon);
  pf.n = n;
  const u64 K = pf.K;
  const u64 M = pf.M;
  for (const auto& [p, m] : factorize(n)) {
    // p belongs to y_m
    if (m <= M) {
      pf.parts[m - 1] *= p;
    } else {
      const u64 spill = m / K;
      for (u64 i = 0; i < spill; ++i) pf.parts[K - 1] *= p;
      for (u64 i = 0; i < m - K * spill; ++i) pf.c *= p;
    }
  }
  return pf;
}

CheckResult verify_power_factorization(const PowerFactorization& pf) {
  CheckResult result;

  bool structural = pf.epsilon > 0 && pf.epsilon <= Rational(1, 2) && pf.n >= 1 && pf.n <= pf.X &&
                    pf.c >= 1;
  if (structural) {
    structural = pf.K == k_for(pf.epsilon) && pf.M == floor(Rational(10) / (pf.epsilon * pf.epsilon)) &&
                 pf.parts.size() == pf.M && pf.K >= 1 && pf.K <= pf.M &&
                 std::all_of(pf.parts.begin(), pf.parts.end(), [](u64 x) { return x >= 1; });
  }
  result.record("structure", structural);
  if (!structural) return result;

  BigInt rebuilt = pf.c;
  BigInt product = 1;
  for (std::size_t j = 1; j <= pf.parts.size(); ++j) {
    const u64 x = pf.parts[j - 1];
    if (x == 1) continue;
    rebuilt *= power(BigInt(x), static_cast<unsigned>(j));
    product *= x;
  }
  result.record("reconstruction", rebuilt == pf.n);

  std::vector<u64> nontrivial;
  for (u64 x : pf.parts) {
    if (x != 1) nontrivial.push_back(x);
  }
  bool coprime = true;
  for (std::size_t i = 0; i < nontrivial.size() && coprime; ++i) {
    for (std::size_t j = i + 1; j < nontrivial.size(); ++j) {
      if (gcd(nontrivial[i], nontrivial[j]) != 1) {
        coprime = false;
        break;
      }
    }
  }
  result.record("pairwise-coprime", coprime);

  const Rational half_eps = pf.epsilon / 2;
  result.record("c-bound", le_power(pf.c, pf.X, half_eps));
  result.record("xK-bound", le_power(pf.parts[pf.K - 1], pf.X, half_eps));

  // rad(n) from an independent factorization, not from the parts
  const BigInt rad = radical(pf.n);
  const unsigned q = denominator(pf.epsilon).convert_to<unsigned>();
  const unsigned p = numerator(pf.epsilon).convert_to<unsigned>();
  const BigInt x_pow = power(BigInt(pf.X), p);
  result.record("rad-lower", power(product, q) <= power(rad, q) * x_pow);
  result.record("rad-upper", power(rad, q) <= x_pow * power(product, q));
  return result;
}

TripleReduction reduce_triple(u64 a, u64 b, u64 c, u64 X, const Rational& epsilon) {
  if (a == 0 || b == 0) throw ArgumentError("triple entries must be positive");
  if (a > c || c - a != b) {
    throw ArgumentError("not a triple: " + std::to_string(a) + " + " + std::to_string(b) +
                        " != " + std::to_string(c));
  }
  if (std::gcd(a, b) != 1) throw ArgumentError("triple is not coprime");
  if (c > X) throw ArgumentError("c exceeds X");
  check_epsilon(epsilon, Rational(1));

  TripleReduction tr;
  tr.a = a;
  tr.b = b;
  tr.c = c;
  tr.X = X;
  tr.epsilon = epsilon;
  tr.inner_epsilon = epsilon * epsilon / 2;
  auto factor = [&](u64 v) {
    return v == 1 ? unit_factorization(X, tr.inner_epsilon) : power_factorize(v, X, tr.inner_epsilon);
  };
  tr.fa = factor(a);
  tr.fb = factor(b);
  tr.fc = factor(c);
  return tr;
}

CheckResult verify_triple_reduction(const TripleReduction& tr) {
  CheckResult result;
  const PowerFactorization* parts[] = {&tr.fa, &tr.fb, &tr.fc};
  const char* names[] = {"a", "b", "c"};
  const u64 values[] = {tr.a, tr.b, tr.c};
  for (int i = 0; i < 3; ++i) {
    const CheckResult sub = verify_power_factorization(*parts[i]);
    for (const auto& check : sub.checks) {
      result.record(std::string(names[i]) + "." + check.name, check.pass);
    }
    result.record(std::string(names[i]) + ".source", parts[i]->n == values[i]);
  }
  result.record("equation", BigInt(tr.a) + tr.b == BigInt(tr.c));
  result.record("coefficients-coprime", gcd(tr.c1(), tr.c2()) == 1 && gcd(tr.c1(), tr.c3()) == 1 &&
                                            gcd(tr.c2(), tr.c3()) == 1);
  std::vector<u64> all;
  for (const auto* pf : parts) {
    for (u64 x : pf->parts) {
      if (x != 1) all.push_back(x);
    }
  }
  bool coprime = true;
  for (std::size_t i = 0; i < all.size() && coprime; ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (gcd(all[i], all[j]) != 1) {
        coprime = false;
        break;
      }
    }
  }
  result.record("parts-pairwise-coprime", coprime);
  return result;
}

bool coefficients_within(const TripleReduction& tr, const Rational& bound_exponent) {
  const u64 largest = std::max({tr.c1(), tr.c2(), tr.c3()});
  return le_power(largest, tr.X, bound_exponent);
}

}  // namespace abc
