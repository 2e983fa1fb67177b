#include "abc/bounds.hpp"

#include <algorithm>

#include "abc/errors.hpp"
#include "bound_kernel.hpp"

namespace abc {
namespace {

using i128 = __int128;
using detail::RawWitness;

constexpr int kMaxDimension = 64;

// 2 * lcm(1..d) * lcm(all denominators): the product, not a joint lcm, so
// that v_p / q is exact for every scaled entry v_p and 1 <= q <= d.
BigInt scaling_unit(const ExponentConfiguration& cfg) {
  BigInt l = denominator(cfg.delta);
  for (int k = 0; k < 3; ++k) {
    for (const auto& x : cfg.vec(k)) l = boost::multiprecision::lcm(l, denominator(x));
  }
  BigInt p = 1;
  for (int i = 2; i <= cfg.d; ++i) p = boost::multiprecision::lcm(p, BigInt(i));
  return 2 * p * l;
}

template <class Int>
detail::ScaledConfig<Int> scale(const ExponentConfiguration& cfg, const BigInt& unit) {
  auto conv = [&](const Rational& x) {
    const BigInt n = numerator(x) * (unit / denominator(x));
    if constexpr (std::is_same_v<Int, BigInt>) {
      return n;
    } else {
      return n.convert_to<Int>();
    }
  };
  detail::ScaledConfig<Int> s;
  s.d = cfg.d;
  for (int k = 0; k < 3; ++k) {
    for (const auto& x : cfg.vec(k)) s.v[k].push_back(conv(x));
  }
  s.delta = conv(cfg.delta);
  s.unit = conv(Rational(1));
  return s;
}

// __int128 is safe when every scaled quantity, times the largest weight and
// the number of summands, stays far below 2^127.
bool fits_fast_path(const ExponentConfiguration& cfg, const BigInt& unit) {
  Rational largest = std::max(cfg.delta, Rational(1));
  for (int k = 0; k < 3; ++k) {
    for (const auto& x : cfg.vec(k)) largest = std::max(largest, x);
  }
  const BigInt bound = ceil(largest * unit) * 4 * 3 * cfg.d * cfg.d;
  return bound < BigInt(1) << 120;
}

Rational to_rational(const i128& v, const BigInt& unit) { return Rational(BigInt(v), unit); }
Rational to_rational(const BigInt& v, const BigInt& unit) { return Rational(v, unit); }

std::vector<int> positions(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i) {
    if (mask >> i & 1) out.push_back(i + 1);
  }
  return out;
}

Witness make_witness(Method m, const RawWitness& w) {
  switch (m) {
    case Method::trivial:
      return PairWitness{w.u, w.v};
    case Method::fourier:
      return FourierWitness{w.u, w.v, w.m};
    case Method::geometry:
      return GeometryWitness{{positions(w.masks[0]), positions(w.masks[1]), positions(w.masks[2])}};
    case Method::determinant:
      return DeterminantWitness{w.u, w.v, w.p, w.q};
    case Method::thue:
      return ThueWitness{w.u, w.v, w.m};
    case Method::extended_fourier:
      return ExtendedFourierWitness{w.u, w.v, w.m};
    case Method::best:
      break;
  }
  return std::monostate{};
}

template <class Int>
BoundReport to_report(Method m, const detail::MethodValue<Int>& mv, const BigInt& unit) {
  BoundReport r;
  r.method = m;
  r.value = to_rational(mv.value, unit);
  r.witness = make_witness(m, mv.witness);
  r.certified = mv.certified;
  if (!mv.certified) r.notes.push_back("geometry search hit its node cap; value is attained but may not be minimal");
  return r;
}

template <class Int>
BoundReport run_typed(const ExponentConfiguration& cfg, MethodMask methods, const BoundOptions& opt,
                      const BigInt& unit, bool want_best) {
  const auto s = scale<Int>(cfg, unit);
  const detail::GeometryParams gp{opt.geometry_limit, opt.geometry_node_cap};
  const auto res = detail::evaluate_kernel(s, methods, gp);
  if (!want_best) {
    for (int k = 0; k < detail::kMethodCount; ++k) {
      if (res.methods[k].present) return to_report(static_cast<Method>(k), res.methods[k], unit);
    }
    throw ArgumentError("no method selected");
  }
  BoundReport best;
  best.method = Method::best;
  for (int k = 0; k < detail::kMethodCount; ++k) {
    if (!res.methods[k].present) continue;
    best.components.push_back(to_report(static_cast<Method>(k), res.methods[k], unit));
    if (!res.methods[k].certified) {
      best.certified = false;
      best.notes.push_back("geometry component not certified minimal");
    }
  }
  if (res.winner < 0) throw ArgumentError("no method selected");
  const Method win = static_cast<Method>(res.winner);
  best.winner = win;
  best.value = to_rational(res.best, unit);
  best.witness = make_witness(win, res.methods[res.winner].witness);
  return best;
}

BoundReport run(const ExponentConfiguration& cfg, MethodMask methods, const BoundOptions& opt, bool want_best) {
  validate(cfg);
  if (cfg.d > kMaxDimension) throw ArgumentError("d above " + std::to_string(kMaxDimension) + " is not supported");
  const BigInt unit = scaling_unit(cfg);
  if (fits_fast_path(cfg, unit)) return run_typed<i128>(cfg, methods, opt, unit, want_best);
  return run_typed<BigInt>(cfg, methods, opt, unit, want_best);
}

Rational max_r(const Rational& x, const Rational& y) { return x < y ? y : x; }
Rational min_r(const Rational& x, const Rational& y) { return y < x ? y : x; }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::trivial:
      return "trivial";
    case Method::fourier:
      return "fourier";
    case Method::geometry:
      return "geometry";
    case Method::determinant:
      return "determinant";
    case Method::thue:
      return "thue";
    case Method::extended_fourier:
      return "extended-fourier";
    case Method::best:
      return "best";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::trivial, Method::fourier, Method::geometry, Method::determinant, Method::thue,
                   Method::extended_fourier, Method::best}) {
    if (to_string(m) == name) return m;
  }
  throw ArgumentError("unknown method '" + name + "'");
}

BoundReport trivial_bound(const ExponentConfiguration& cfg) { return evaluate(Method::trivial, cfg); }
BoundReport fourier_bound(const ExponentConfiguration& cfg) { return evaluate(Method::fourier, cfg); }
BoundReport geometry_bound(const ExponentConfiguration& cfg, const BoundOptions& options) {
  return evaluate(Method::geometry, cfg, options);
}
BoundReport determinant_bound(const ExponentConfiguration& cfg) { return evaluate(Method::determinant, cfg); }
BoundReport thue_bound(const ExponentConfiguration& cfg) { return evaluate(Method::thue, cfg); }
BoundReport extended_fourier_bound(const ExponentConfiguration& cfg) {
  return evaluate(Method::extended_fourier, cfg);
}

BoundReport evaluate(Method method, const ExponentConfiguration& cfg, const BoundOptions& options) {
  if (method == Method::best) return best_bound(cfg, options);
  return run(cfg, method_bit(method), options, false);
}

BoundReport best_bound(const ExponentConfiguration& cfg, const BoundOptions& options) {
  const MethodMask mask = options.methods & kAllMethods;
  if (mask == 0) throw ArgumentError("best_bound needs at least one method");
  return run(cfg, mask, options, true);
}

BoundReport geometry_bound_exhaustive(const ExponentConfiguration& cfg) {
  validate(cfg);
  if (cfg.d > kExhaustiveGeometryLimit) {
    throw ArgumentError("exhaustive geometry search refuses d > " + std::to_string(kExhaustiveGeometryLimit));
  }
  const std::size_t n = std::size_t{1} << cfg.d;
  // per-vector subset sums of i * v_i and v_i
  std::array<std::vector<Rational>, 3> W, S;
  for (int k = 0; k < 3; ++k) {
    W[k].assign(n, 0);
    S[k].assign(n, 0);
    for (std::size_t mask = 1; mask < n; ++mask) {
      const int low = __builtin_ctzll(mask);
      const std::size_t prev = mask & (mask - 1);
      W[k][mask] = W[k][prev] + cfg.vec(k)[low] * (low + 1);
      S[k][mask] = S[k][prev] + cfg.vec(k)[low];
    }
  }
  BoundReport r;
  r.method = Method::geometry;
  bool first = true;
  std::array<std::size_t, 3> arg{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational w01 = W[0][i] + W[1][j];
      const Rational s01 = S[0][i] + S[1][j];
      for (std::size_t k = 0; k < n; ++k) {
        const Rational val = max_r(Rational(1), w01 + W[2][k]) - s01 - S[2][k];
        if (first || val < r.value) {
          r.value = val;
          arg = {i, j, k};
          first = false;
        }
      }
    }
  }
  r.value += cfg.delta;
  r.witness = GeometryWitness{{positions(arg[0]), positions(arg[1]), positions(arg[2])}};
  return r;
}

Rational evaluate_at_witness(const ExponentConfiguration& cfg, const BoundReport& report) {
  const auto& a = cfg;
  const int d = cfg.d;
  return std::visit(
      [&](const auto& w) -> Rational {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, std::monostate>) {
          throw ArgumentError("report has no witness");
        } else if constexpr (std::is_same_v<W, PairWitness>) {
          return a.total(w.u) + a.total(w.v);
        } else if constexpr (std::is_same_v<W, FourierWitness>) {
          Rational sum = 0;
          for (int i = 0; i < d; ++i) sum += max_r(a.vec(w.u)[i], a.vec(w.v)[i]);
          const Rational sub = w.m == 0 ? Rational(0) : max_r(a.vec(w.u)[w.m - 1], a.vec(w.v)[w.m - 1]);
          return (1 + a.delta + sum - sub) / 2;
        } else if constexpr (std::is_same_v<W, GeometryWitness>) {
          Rational weighted = 0, plain = 0;
          for (int k = 0; k < 3; ++k) {
            for (int i : w.subsets[k]) {
              weighted += a.vec(k).at(i - 1) * i;
              plain += a.vec(k).at(i - 1);
            }
          }
          return a.delta + max_r(Rational(1), weighted) - plain;
        } else if constexpr (std::is_same_v<W, DeterminantWitness>) {
          const Rational& up = a.vec(w.u).at(w.p - 1);
          const Rational& vq = a.vec(w.v).at(w.q - 1);
          return 1 + a.delta - up - vq + min_r(up / w.q, vq / w.p);
        } else if constexpr (std::is_same_v<W, ThueWitness>) {
          Rational sum = 0;
          if (w.p >= 2) {
            for (int i = w.p; i <= d; i += w.p) sum += a.vec(w.u)[i - 1] + a.vec(w.v)[i - 1];
          }
          return 1 + a.delta - sum;
        } else {
          Rational sum = 0, sub = 0;
          for (int j = 0; j < d; ++j) sum += max_r(a.vec(w.y)[j], a.vec(w.z)[j]);
          if (w.i >= 2) {
            for (int j = w.i; j <= d; j += w.i) sub += a.vec(w.z)[j - 1];
          }
          return (1 + a.delta + sum - sub) / 2;
        }
      },
      report.witness);
}

}  // namespace abc
