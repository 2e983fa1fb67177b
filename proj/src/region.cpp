#include "abc/region.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "abc/errors.hpp"
#include "bound_kernel.hpp"
#include "parallel.hpp"
#include "simplex.hpp"

namespace abc {
namespace {

using i64 = std::int64_t;
using i128 = __int128;
using u64 = std::uint64_t;
using Rng = std::mt19937_64;

const Rational kTotalLow{8, 25};    // 0.32
const Rational kTotalHigh{17, 50};  // 0.34
const Rational kPairLow{33, 50};    // 0.66
const Rational kR1Low{1, 150};
const Rational kR1High{1, 75};
const Rational kR2High{1, 150};
const Rational kR3High{1, 100};

constexpr int kMaxSearchDimension = 12;

ConstraintRecord record(std::string name, Rational slack, bool strict = false, bool informational = false) {
  ConstraintRecord r;
  r.name = std::move(name);
  r.satisfied = strict ? slack > 0 : slack >= 0;
  r.slack = std::move(slack);
  r.strict = strict;
  r.informational = informational;
  return r;
}

u64 splitmix(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u64 stream_seed(u64 seed, u64 stream, u64 index) { return splitmix(splitmix(seed ^ splitmix(stream)) + index); }

i64 to_i64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw ResourceError("grid bound out of range");
  return v.convert_to<i64>();
}

i64 uniform(Rng& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }
std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

struct Grid {
  std::array<std::vector<i64>, 3> x;
};

// All constraint bounds converted to exact integer bounds on grid units.
struct Context {
  int d = 0;
  Rational delta, epsilon;
  i64 G = kGridUnits;
  i64 total_lo = 0, total_hi = 0, pair_lo = 0, grand_hi = 0, weight_hi = 0, c_weight_lo = 0;
  i64 s12_target = 0, a3_target = 0;
  std::array<std::pair<i64, i64>, 3> vertices{};
  i128 unit = 1, factor = 1, delta_scaled = 0;
};

Context make_context(int d, const Rational& delta, const Rational& epsilon) {
  if (delta < 0 || epsilon < 0) throw ArgumentError("delta and epsilon must be non-negative");
  Context c;
  c.d = d;
  c.delta = delta;
  c.epsilon = epsilon;
  const Rational G(c.G);
  const Rational eps2 = epsilon * epsilon;
  c.total_lo = to_i64(ceil((kTotalLow - delta) * G));
  c.total_hi = to_i64(floor((kTotalHigh + delta - epsilon / 2) * G));
  c.pair_lo = to_i64(ceil((kPairLow - eps2) * G));
  c.grand_hi = to_i64(floor((1 + delta - epsilon) * G));
  c.weight_hi = c.G;
  c.c_weight_lo = to_i64(ceil((1 - eps2) * G));
  c.s12_target = to_i64(floor((kTotalHigh + delta) * G));
  c.a3_target = to_i64(floor(kTotalLow * G));
  const auto tri = triangle_vertices();
  for (int j = 0; j < 3; ++j) {
    c.vertices[j] = {to_i64(floor(tri[j].first * G)), to_i64(floor(tri[j].second * G))};
  }

  BigInt P = 1;
  for (int i = 2; i <= d; ++i) P = boost::multiprecision::lcm(P, BigInt(i));
  const BigInt L = boost::multiprecision::lcm(BigInt(c.G), denominator(delta));
  const BigInt unit = 2 * P * L;
  if (unit * 12 * d * d * 4 >= BigInt(1) << 120) throw ResourceError("grid scaling too wide for the fast kernel");
  c.unit = unit.convert_to<i128>();
  c.factor = (unit / c.G).convert_to<i128>();
  c.delta_scaled = (numerator(delta) * (unit / denominator(delta))).convert_to<i128>();
  return c;
}

i64 weight(const std::vector<i64>& v) {
  i64 w = 0;
  for (std::size_t i = 0; i < v.size(); ++i) w += static_cast<i64>(i + 1) * v[i];
  return w;
}

i64 total(const std::vector<i64>& v) {
  i64 t = 0;
  for (i64 x : v) t += x;
  return t;
}

bool totals_ok(const Context& c, const std::array<i64, 3>& T) {
  for (i64 t : T) {
    if (t < c.total_lo || t > c.total_hi) return false;
  }
  return T[0] + T[1] >= c.pair_lo && T[0] + T[2] >= c.pair_lo && T[1] + T[2] >= c.pair_lo &&
         T[0] + T[1] + T[2] <= c.grand_hi;
}

bool feasible(const Context& c, const Grid& g) {
  for (const auto& v : g.x) {
    for (i64 x : v) {
      if (x < 0) return false;
    }
  }
  const i64 wc = weight(g.x[2]);
  if (weight(g.x[0]) > c.weight_hi || weight(g.x[1]) > c.weight_hi || wc > c.weight_hi || wc < c.c_weight_lo) {
    return false;
  }
  return totals_ok(c, {total(g.x[0]), total(g.x[1]), total(g.x[2])});
}

i64 weight_floor(const Context& c, int k) { return k == 2 ? c.c_weight_lo : 0; }

ExponentConfiguration to_configuration(const Context& c, const Grid& g) {
  ExponentConfiguration cfg;
  cfg.d = c.d;
  for (int k = 0; k < 3; ++k) {
    for (i64 x : g.x[k]) cfg.vec(k).push_back(Rational(x, c.G));
  }
  cfg.delta = c.delta;
  cfg.epsilon = c.epsilon;
  return cfg;
}

class GridEvaluator {
 public:
  GridEvaluator(const Context& c, MethodMask methods) : c_(c), methods_(methods) {
    s_.d = c.d;
    s_.unit = c.unit;
    s_.delta = c.delta_scaled;
    for (auto& v : s_.v) v.assign(c.d, 0);
  }

  detail::KernelResult<i128> operator()(const Grid& g) {
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < c_.d; ++i) s_.v[k][i] = static_cast<i128>(g.x[k][i]) * c_.factor;
    }
    ++evaluations;
    return detail::evaluate_kernel(s_, methods_, detail::GeometryParams{kMaxSearchDimension, 0});
  }

  u64 evaluations = 0;

 private:
  const Context& c_;
  MethodMask methods_;
  detail::ScaledConfig<i128> s_;
};

// Spreads mass over the free positions (1-based) with random, often sparse,
// proportions.
void scatter(std::vector<i64>& x, const std::vector<int>& free, i64 mass, Rng& rng) {
  if (mass == 0 || free.empty()) return;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double p_zero = 0.7 * unit(rng);
  std::vector<double> w(free.size(), 0.0);
  double sum = 0.0;
  for (auto& wi : w) {
    wi = unit(rng) < p_zero ? 0.0 : expo(rng);
    sum += wi;
  }
  if (sum == 0.0) {
    w[pick(rng, w.size())] = 1.0;
    sum = 1.0;
  }
  i64 assigned = 0;
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < free.size(); ++j) {
    if (w[j] == 0.0) continue;
    used.push_back(j);
    const i64 share = std::min(mass - assigned, static_cast<i64>(static_cast<double>(mass) * (w[j] / sum)));
    x[free[j] - 1] += share;
    assigned += share;
  }
  x[free[used[pick(rng, used.size())]] - 1] += mass - assigned;
}

// Moves mass between free positions until lo <= sum i x_i <= hi. Totals are
// preserved. Returns false when the window cannot be reached.
bool fit_weight(std::vector<i64>& x, const std::vector<int>& free, i64 lo, i64 hi, Rng& rng) {
  i64 W = weight(x);
  if (W >= lo && W <= hi) return true;
  if (free.size() < 2 || lo > hi) return false;
  const i64 target = uniform(rng, lo, hi);
  std::vector<int> from, to;
  for (int iter = 0; iter < 20'000; ++iter) {
    if (W >= lo && W <= hi) return true;
    const i64 diff = W - target;
    const bool down = diff > 0;  // move mass to lower positions
    const i64 need = down ? diff : -diff;
    from.clear();
    for (int p : free) {
      if (x[p - 1] == 0) continue;
      const bool has_partner = down ? p > free.front() : p < free.back();
      if (has_partner) from.push_back(p);
    }
    if (from.empty()) return false;
    const int src = from[pick(rng, from.size())];
    to.clear();
    for (int p : free) {
      if (down ? p < src : p > src) to.push_back(p);
    }
    int dst = to[pick(rng, to.size())];
    i64 gap = down ? src - dst : dst - src;
    i64 m = std::min(x[src - 1], need / gap);
    if (m == 0) {
      dst = down ? to.back() : to.front();  // nearest partner
      gap = down ? src - dst : dst - src;
      m = std::min(x[src - 1], need / gap);
      if (m == 0) {
        if (need < gap) {
          // cannot land exactly; accept anything inside the window
          const i64 step = x[src - 1] > 0 ? gap : 0;
          const i64 W2 = down ? W - step : W + step;
          if (step > 0 && W2 >= lo && W2 <= hi) {
            x[src - 1] -= 1;
            x[dst - 1] += 1;
            W = W2;
            continue;
          }
          return false;
        }
        continue;
      }
    }
    x[src - 1] -= m;
    x[dst - 1] += m;
    W += down ? -m * gap : m * gap;
  }
  return W >= lo && W <= hi;
}

std::vector<int> positions_from(int first, int d) {
  std::vector<int> out;
  for (int p = first; p <= d; ++p) out.push_back(p);
  return out;
}

std::optional<Grid> draw(const Context& c, SampleFamily family, Rng& rng, bool exact_target = false) {
  const int d = c.d;
  std::array<i64, 3> T{};
  bool ok = false;
  for (int t = 0; t < 256 && !ok; ++t) {
    for (auto& v : T) v = uniform(rng, c.total_lo, c.total_hi);
    ok = totals_ok(c, T);
  }
  if (!ok) return std::nullopt;

  Grid g;
  for (auto& v : g.x) v.assign(d, 0);
  std::array<std::vector<int>, 3> free{positions_from(1, d), positions_from(1, d), positions_from(1, d)};
  auto split_over_vectors = [&](i64 mass, int position) {
    std::vector<i64> tmp(3, 0);
    scatter(tmp, {1, 2, 3}, mass, rng);
    for (int k = 0; k < 3; ++k) g.x[k][position - 1] = tmp[k];
  };
  const bool exact = exact_target || uniform(rng, 0, 1) == 0;

  switch (family) {
    case SampleFamily::uniform:
      break;
    case SampleFamily::s12_boundary: {
      if (d < 3) return std::nullopt;
      i64 s12 = c.s12_target;
      if (!exact) s12 += uniform(rng, -c.G / 500, c.G / 500);
      if (s12 < 0) return std::nullopt;
      const i64 s1 = uniform(rng, 0, s12);
      split_over_vectors(s1, 1);
      split_over_vectors(s12 - s1, 2);
      for (auto& f : free) f = positions_from(3, d);
      break;
    }
    case SampleFamily::a3_heavy: {
      if (d < 3) return std::nullopt;
      i64 a3 = c.a3_target;
      if (!exact) a3 += uniform(rng, -c.G / 200, c.G / 200);
      g.x[0][2] = a3;
      free[0].erase(free[0].begin() + 2);
      break;
    }
    case SampleFamily::vertex_t1:
    case SampleFamily::vertex_t2:
    case SampleFamily::vertex_t3: {
      if (d < 3) return std::nullopt;
      const auto [s1, s2] = c.vertices[static_cast<int>(family) - static_cast<int>(SampleFamily::vertex_t1)];
      split_over_vectors(s1, 1);
      split_over_vectors(s2, 2);
      for (auto& f : free) f = positions_from(3, d);
      break;
    }
  }

  for (int k = 0; k < 3; ++k) {
    const i64 rest = T[k] - total(g.x[k]);
    if (rest < 0 || (rest > 0 && free[k].empty())) return std::nullopt;
    scatter(g.x[k], free[k], rest, rng);
  }
  for (int k = 0; k < 3; ++k) {
    if (!fit_weight(g.x[k], free[k], weight_floor(c, k), c.weight_hi, rng)) return std::nullopt;
  }
  if (!feasible(c, g)) return std::nullopt;
  return g;
}

struct ClimbResult {
  Grid grid;
  i128 value = 0;
  u64 evaluations = 0;
};

// One random elementary move: shift mass between two positions of a vector,
// change one coordinate, or shift mass between two vectors at one position.
// Moved coordinates are added to held.
bool elementary_move(Grid& g, std::array<std::vector<int>, 3>& held, i64 step, int d, Rng& rng) {
  const int kind = static_cast<int>(uniform(rng, 0, 2));
  const int k = static_cast<int>(uniform(rng, 0, 2));
  const int i = static_cast<int>(uniform(rng, 1, d));
  if (kind == 0) {
    if (d < 2) return false;
    int j = static_cast<int>(uniform(rng, 1, d - 1));
    if (j >= i) ++j;
    const i64 m = std::min(step, g.x[k][i - 1]);
    if (m == 0) return false;
    g.x[k][i - 1] -= m;
    g.x[k][j - 1] += m;
    held[k].insert(held[k].end(), {i, j});
  } else if (kind == 1) {
    const bool up = uniform(rng, 0, 1) == 1;
    const i64 m = up ? step : std::min(step, g.x[k][i - 1]);
    if (m == 0) return false;
    g.x[k][i - 1] += up ? m : -m;
    held[k].push_back(i);
  } else {
    int k2 = static_cast<int>(uniform(rng, 0, 1));
    if (k2 >= k) ++k2;
    const i64 m = std::min(step, g.x[k][i - 1]);
    if (m == 0) return false;
    g.x[k][i - 1] -= m;
    g.x[k2][i - 1] += m;
    held[k].push_back(i);
    held[k2].push_back(i);
  }
  return true;
}

// Random feasible moves with a shrinking step; only strict improvements are
// kept. Compound moves (several elementary moves at once) let the climb follow
// ridges where two bound pieces are tied. Infeasible candidates are projected
// by re-fitting the weighted sums of the touched vectors with the moved
// coordinates held fixed.
ClimbResult climb(const Context& c, GridEvaluator& eval, Grid start, i128 value, Rng& rng, u64 max_evals) {
  ClimbResult out{std::move(start), value, 0};
  const u64 begin = eval.evaluations;
  const int d = c.d;
  for (i64 base : {c.G / 100, c.G / 1000, c.G / 10000, c.G / 100000}) {
    int stall = 0;
    while (stall < 600 && eval.evaluations - begin < max_evals) {
      Grid cand = out.grid;
      std::array<std::vector<int>, 3> held;
      const int parts = uniform(rng, 0, 1) == 0 ? 1 : static_cast<int>(uniform(rng, 2, 4));
      bool moved = false;
      for (int n = 0; n < parts; ++n) {
        moved |= elementary_move(cand, held, base * uniform(rng, 1, 3), d, rng);
      }
      if (!moved) {
        ++stall;
        continue;
      }
      if (!feasible(c, cand)) {
        for (int v = 0; v < 3; ++v) {
          if (held[v].empty()) continue;
          std::vector<int> free;
          for (int p = 1; p <= d; ++p) {
            if (std::find(held[v].begin(), held[v].end(), p) == held[v].end()) free.push_back(p);
          }
          fit_weight(cand.x[v], free, weight_floor(c, v), c.weight_hi, rng);
        }
        if (!feasible(c, cand)) {
          ++stall;
          continue;
        }
      }
      const auto res = eval(cand);
      if (res.best > out.value) {
        out.grid = std::move(cand);
        out.value = res.best;
        stall = 0;
      } else {
        ++stall;
      }
    }
  }
  out.evaluations = eval.evaluations - begin;
  return out;
}

// Local linear-programming refinement. Once the branch of every max() is
// fixed, each bound piece is affine in the configuration and the best bound
// is the minimum of those pieces. Maximizing that minimum over the region
// inside a trust box is an LP; its solution is rounded to the grid and only
// kept when the exact evaluation improves. Geometry has too many subsets to
// list, so its pieces enter as cuts taken from the witnesses of the current
// point and of rejected candidates.
using RealPoint = std::array<std::vector<double>, 3>;

struct Piece {
  double c0 = 0.0;
  std::vector<double> g;  // coefficient of x[k][i] at k * d + i

  double at(const RealPoint& x, int d) const {
    double v = c0;
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < d; ++i) v += g[k * d + i] * x[k][i];
    }
    return v;
  }
};

RealPoint to_real(const Context& c, const Grid& g) {
  RealPoint x;
  for (int k = 0; k < 3; ++k) {
    for (i64 v : g.x[k]) x[k].push_back(static_cast<double>(v) / static_cast<double>(c.G));
  }
  return x;
}

void add_geometry_piece(const Context& c, const RealPoint& x, const std::array<u64, 3>& masks,
                        std::vector<Piece>& out) {
  const int d = c.d;
  const double delta = c.delta.convert_to<double>();
  double W = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < d; ++i) {
      if (masks[k] >> i & 1) W += (i + 1) * x[k][i];
    }
  }
  const bool weighted = W >= 1.0;
  Piece p{weighted ? delta : 1.0 + delta, std::vector<double>(3 * d, 0.0)};
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < d; ++i) {
      if (masks[k] >> i & 1) p.g[k * d + i] = weighted ? i : -1.0;
    }
  }
  out.push_back(std::move(p));
}

// Every non-geometry piece with branches chosen at x.
void add_closed_pieces(const Context& c, const RealPoint& x, MethodMask methods, std::vector<Piece>& out) {
  const int d = c.d;
  const int n = 3 * d;
  const double delta = c.delta.convert_to<double>();
  auto blank = [&](double c0) { return Piece{c0, std::vector<double>(n, 0.0)}; };
  auto larger_sum = [&](int u, int v, Piece& p, double w) {
    for (int i = 0; i < d; ++i) p.g[(x[u][i] >= x[v][i] ? u : v) * d + i] += w;
  };
  if (methods >> detail::kTrivial & 1) {
    for (auto [u, v] : detail::kPairs) {
      Piece p = blank(0.0);
      for (int i = 0; i < d; ++i) p.g[u * d + i] = p.g[v * d + i] = 1.0;
      out.push_back(std::move(p));
    }
  }
  if (methods >> detail::kFourier & 1) {
    for (auto [u, v] : detail::kPairs) {
      Piece base = blank(0.5 * (1.0 + delta));
      larger_sum(u, v, base, 0.5);
      if (d < 2) out.push_back(base);
      for (int m = 2; m <= d; ++m) {
        for (int w : {u, v}) {
          Piece p = base;
          p.g[w * d + m - 1] -= 0.5;
          out.push_back(std::move(p));
        }
      }
    }
  }
  if (methods >> detail::kDeterminant & 1) {
    for (auto [u, v] : detail::kPairs) {
      for (int p = 1; p <= d; ++p) {
        for (int q = 1; q <= d; ++q) {
          Piece one = blank(1.0 + delta);
          one.g[u * d + p - 1] -= 1.0 - 1.0 / q;
          one.g[v * d + q - 1] -= 1.0;
          Piece two = blank(1.0 + delta);
          two.g[u * d + p - 1] -= 1.0;
          two.g[v * d + q - 1] -= 1.0 - 1.0 / p;
          out.push_back(std::move(one));
          out.push_back(std::move(two));
        }
      }
    }
  }
  if (methods >> detail::kThue & 1) {
    for (auto [u, v] : detail::kPairs) {
      if (d < 2) out.push_back(blank(1.0 + delta));
      for (int p = 2; p <= d; ++p) {
        Piece piece = blank(1.0 + delta);
        for (int i = p; i <= d; i += p) piece.g[u * d + i - 1] = piece.g[v * d + i - 1] = -1.0;
        out.push_back(std::move(piece));
      }
    }
  }
  if (methods >> detail::kExtended & 1) {
    for (auto [y, z] : detail::kOrderedPairs) {
      Piece base = blank(0.5 * (1.0 + delta));
      larger_sum(y, z, base, 0.5);
      if (d < 2) out.push_back(base);
      for (int i = 2; i <= d; ++i) {
        Piece p = base;
        for (int j = i; j <= d; j += i) p.g[z * d + j - 1] -= 0.5;
        out.push_back(std::move(p));
      }
    }
  }
}

// Region rows a.x <= b in real coordinates, tightened by a rounding margin.
std::vector<Piece> region_rows(const Context& c) {
  const int d = c.d;
  const double G = static_cast<double>(c.G);
  const double margin = (d * (d + 1) + 4.0 * d) / G;
  std::vector<Piece> rows;
  auto row = [&](double rhs) -> Piece& {
    rows.push_back(Piece{rhs - margin, std::vector<double>(3 * d, 0.0)});
    return rows.back();
  };
  for (int k = 0; k < 3; ++k) {
    Piece& w = row(c.weight_hi / G);
    for (int i = 0; i < d; ++i) w.g[k * d + i] = i + 1;
    Piece& hi = row(c.total_hi / G);
    for (int i = 0; i < d; ++i) hi.g[k * d + i] = 1.0;
    Piece& lo = row(-c.total_lo / G);
    for (int i = 0; i < d; ++i) lo.g[k * d + i] = -1.0;
  }
  Piece& wc = row(-c.c_weight_lo / G);
  for (int i = 0; i < d; ++i) wc.g[2 * d + i] = -(i + 1.0);
  for (auto [u, v] : detail::kPairs) {
    Piece& pr = row(-c.pair_lo / G);
    for (int i = 0; i < d; ++i) pr.g[u * d + i] = pr.g[v * d + i] = -1.0;
  }
  Piece& grand = row(c.grand_hi / G);
  for (auto& x : grand.g) x = 1.0;
  return rows;
}

// Maximizes the piece minimum over x + y with |y_j| <= radius, x + y >= 0 and
// the region rows. Returns the proposed real point, or nothing when the model
// predicts no gain.
std::optional<RealPoint> lp_proposal(const Context& c, const RealPoint& x, const std::vector<Piece>& pieces,
                                     const std::vector<Piece>& region, double radius) {
  const int d = c.d;
  const std::size_t n = 3 * static_cast<std::size_t>(d);
  detail::LinearProgram lp;
  lp.vars = 2 * n + 1;  // y+, y-, tau
  double t0 = pieces.front().at(x, d);
  for (const auto& p : pieces) t0 = std::min(t0, p.at(x, d));
  auto add_row = [&](const std::vector<double>& g, double tau_coef, double rhs) {
    std::vector<double> a(lp.vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = g[j];
      a[n + j] = -g[j];
    }
    a[2 * n] = tau_coef;
    lp.A.push_back(std::move(a));
    lp.b.push_back(std::max(0.0, rhs));
  };
  for (const auto& p : pieces) {
    std::vector<double> neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -p.g[j];
    add_row(neg, 1.0, p.at(x, d) - t0);
  }
  for (const auto& r : region) add_row(r.g, 0.0, 2 * r.c0 - r.at(x, d));  // c0 - g.x
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> a(lp.vars, 0.0);
    a[j] = 1.0;
    lp.A.push_back(a);
    lp.b.push_back(radius);
    a[j] = 0.0;
    a[n + j] = 1.0;
    lp.A.push_back(std::move(a));
    lp.b.push_back(std::min(radius, x[j / d][j % d]));
  }
  lp.c.assign(lp.vars, -1e-9);
  lp.c[2 * n] = 1.0;
  const auto sol = detail::solve_lp(lp);
  if (!sol.optimal || sol.z[2 * n] <= 1e-12) return std::nullopt;
  RealPoint out = x;
  for (std::size_t j = 0; j < n; ++j) out[j / d][j % d] += sol.z[j] - sol.z[n + j];
  return out;
}

// Rounds a real point to a feasible grid point, pulling it back towards the
// (feasible) origin point when rounding breaks a constraint.
std::optional<Grid> round_to_grid(const Context& c, const Grid& origin, const RealPoint& target, Rng& rng) {
  const RealPoint x0 = to_real(c, origin);
  const auto free = positions_from(1, c.d);
  for (double alpha : {1.0, 0.5, 0.25}) {
    Grid g;
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < c.d; ++i) {
        const double v = x0[k][i] + alpha * (target[k][i] - x0[k][i]);
        g.x[k].push_back(std::max<i64>(0, std::llround(v * static_cast<double>(c.G))));
      }
    }
    if (feasible(c, g)) return g;
    for (int k = 0; k < 3; ++k) fit_weight(g.x[k], free, weight_floor(c, k), c.weight_hi, rng);
    if (feasible(c, g)) return g;
  }
  return std::nullopt;
}

void lp_refine(const Context& c, GridEvaluator& eval, MethodMask methods, ClimbResult& state, Rng& rng,
               u64 max_evals) {
  const u64 begin = eval.evaluations;
  const auto region = region_rows(c);
  std::vector<Piece> cuts;
  double radius = 0.01;
  auto current = eval(state.grid);
  while (radius > 1e-7 && eval.evaluations - begin < max_evals) {
    const RealPoint x = to_real(c, state.grid);
    std::vector<Piece> pieces;
    add_closed_pieces(c, x, methods, pieces);
    if (methods >> detail::kGeometry & 1) add_geometry_piece(c, x, current.methods[detail::kGeometry].witness.masks, pieces);
    pieces.insert(pieces.end(), cuts.begin(), cuts.end());
    const auto target = lp_proposal(c, x, pieces, region, radius);
    if (!target) break;
    const auto cand = round_to_grid(c, state.grid, *target, rng);
    if (!cand) {
      radius /= 2;
      continue;
    }
    const auto res = eval(*cand);
    if (res.best > state.value) {
      state.grid = *cand;
      state.value = res.best;
      current = res;
      radius = std::min(radius * 2, 0.05);
      continue;
    }
    // rejected: the candidate's own pieces become cuts
    const RealPoint xc = to_real(c, *cand);
    if (methods >> detail::kGeometry & 1) add_geometry_piece(c, xc, res.methods[detail::kGeometry].witness.masks, cuts);
    add_closed_pieces(c, xc, methods & ~method_bit(Method::trivial) & ~method_bit(Method::thue) &
                                 ~method_bit(Method::determinant), cuts);
    if (cuts.size() > 400) cuts.erase(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(cuts.size() - 400));
    radius /= 2;
  }
  state.evaluations += eval.evaluations - begin;
}

Rational to_rational(const Context& c, i128 v) { return Rational(BigInt(v), BigInt(c.unit)); }

SampleFamily family_of(u64 index, u64 budget) {
  // half uniform, the rest shared by the five corner families
  const u64 corner = budget / 10;
  const u64 uniform_count = budget - 5 * corner;
  if (index < uniform_count) return SampleFamily::uniform;
  return kSampleFamilies[1 + (index - uniform_count) / corner];
}

}  // namespace

const ConstraintRecord& ConstraintReport::at(const std::string& name) const {
  for (const auto& r : records) {
    if (r.name == name) return r;
  }
  throw ArgumentError("no constraint named " + name);
}

ConstraintReport check_constraints(const ExponentConfiguration& cfg, const Rational& lambda) {
  validate(cfg);
  const Rational& delta = cfg.delta;
  const Rational& eps = cfg.epsilon;
  const Rational eps2 = eps * eps;
  ConstraintReport rep;
  auto& r = rep.records;
  r.push_back(record("C1.a", 1 - cfg.weighted_total(0)));
  r.push_back(record("C1.b", 1 - cfg.weighted_total(1)));
  r.push_back(record("C1.c.lower", cfg.weighted_total(2) - (1 - eps2)));
  r.push_back(record("C1.c.upper", 1 - cfg.weighted_total(2)));
  r.push_back(record("C2.ab", cfg.total_a() + cfg.total_b() - (kPairLow - eps2)));
  r.push_back(record("C2.ac", cfg.total_a() + cfg.total_c() - (kPairLow - eps2)));
  r.push_back(record("C2.bc", cfg.total_b() + cfg.total_c() - (kPairLow - eps2)));
  r.push_back(record("C3", 1 + delta - eps - (cfg.total_a() + cfg.total_b() + cfg.total_c())));
  for (int k = 0; k < 3; ++k) {
    const std::string v(1, vector_name(k));
    r.push_back(record("C4." + v + ".lower", cfg.total(k) - (kTotalLow - delta)));
    r.push_back(record("C4." + v + ".upper", kTotalHigh + delta - eps / 2 - cfg.total(k)));
  }
  const std::array<Rational, 3> dv{cfg.delta_a(), cfg.delta_b(), cfg.delta_c()};
  for (int k = 0; k < 3; ++k) {
    const std::string v(1, vector_name(k));
    r.push_back(record("R1." + v + ".lower", dv[k] + kR1Low + delta, false, true));
    r.push_back(record("R1." + v + ".upper", kR1High + delta + eps - dv[k], false, true));
  }
  r.push_back(record("R2.ab", kR2High + eps2 - cfg.delta_ab(), false, true));
  r.push_back(record("R2.ac", kR2High + eps2 - cfg.delta_ac(), false, true));
  r.push_back(record("R2.bc", kR2High + eps2 - cfg.delta_bc(), false, true));
  r.push_back(record("R3.lower", cfg.delta_s() + delta, true, true));
  r.push_back(record("R3.upper", kR3High + eps - cfg.delta_s(), false, true));
  r.push_back(record("lambda", 1 + delta - eps - lambda, true, true));
  rep.feasible = std::all_of(r.begin(), r.end(), [](const ConstraintRecord& x) {
    return x.informational || x.satisfied;
  });
  return rep;
}

std::string to_string(SampleFamily f) {
  switch (f) {
    case SampleFamily::uniform:
      return "uniform";
    case SampleFamily::s12_boundary:
      return "s1+s2-boundary";
    case SampleFamily::a3_heavy:
      return "a3-heavy";
    case SampleFamily::vertex_t1:
      return "triangle-vertex-1";
    case SampleFamily::vertex_t2:
      return "triangle-vertex-2";
    case SampleFamily::vertex_t3:
      return "triangle-vertex-3";
  }
  return "unknown";
}

std::array<std::pair<Rational, Rational>, 3> triangle_vertices() {
  return {{{Rational(49, 800), Rational(31, 200)},
           {Rational(157, 2000), Rational(33, 250)},
           {Rational(17, 240), Rational(7, 60)}}};
}

SampleBatch sample_feasible(int d, const Rational& delta, const Rational& epsilon, std::uint64_t count,
                            std::uint64_t seed, SampleFamily family) {
  if (d < 3) throw ArgumentError("the feasible region is empty for d < 3");
  if (d > kMaxSearchDimension) {
    throw ArgumentError("d above " + std::to_string(kMaxSearchDimension) + " exceeds the geometry search limit");
  }
  if (count == 0) throw ArgumentError("count must be >= 1");
  const Context c = make_context(d, delta, epsilon);
  SampleBatch batch;
  const u64 max_attempts = std::max<u64>(count * 100, 10'000);
  for (u64 k = 0; batch.configs.size() < count && k < max_attempts; ++k) {
    Rng rng(stream_seed(seed, 2 + static_cast<u64>(family), k));
    ++batch.attempts;
    if (auto g = draw(c, family, rng)) batch.configs.push_back(to_configuration(c, *g));
  }
  if (batch.configs.size() < count) {
    batch.warnings.push_back("acceptance rate too low: " + std::to_string(batch.configs.size()) + " of " +
                             std::to_string(count) + " after " + std::to_string(batch.attempts) + " attempts");
  }
  return batch;
}

std::optional<ExponentConfiguration> corner_configuration(int d, const Rational& delta, const Rational& epsilon,
                                                          SampleFamily family, std::uint64_t seed,
                                                          std::uint64_t max_attempts) {
  if (d < 3 || d > kMaxSearchDimension) return std::nullopt;
  const Context c = make_context(d, delta, epsilon);
  for (u64 k = 0; k < max_attempts; ++k) {
    Rng rng(stream_seed(seed, 16 + static_cast<u64>(family), k));
    if (auto g = draw(c, family, rng, true)) return to_configuration(c, *g);
  }
  return std::nullopt;
}

RegionSearchReport maximize_nu(const RegionSearchOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (opt.d < 1) throw ArgumentError("d must be >= 1");
  if (opt.d > kMaxSearchDimension) {
    throw ArgumentError("d above " + std::to_string(kMaxSearchDimension) + " exceeds the geometry search limit");
  }
  if (opt.budget == 0) throw ArgumentError("budget must be >= 1");
  if ((opt.methods & kAllMethods) == 0) throw ArgumentError("no bound method selected");

  RegionSearchReport rep;
  rep.options = opt;
  rep.workers = detail::resolve_workers(opt.threads);
  rep.notes.push_back(
      "falsification search over sampled and hill-climbed configurations; a pass is evidence, not a proof");
  const Context c = make_context(opt.d, opt.delta, opt.epsilon);
  const MethodMask methods = opt.methods & kAllMethods;

  struct Slot {
    bool feasible = false;
    i128 value = 0;
    int winner = -1;
    Grid grid;
  };
  std::vector<Slot> slots(opt.budget);
  std::vector<u64> evals_per_worker(rep.workers, 0);
  detail::parallel_for(opt.budget, rep.workers, [&](u64 k) {
    Rng rng(stream_seed(opt.seed, 0, k));
    auto g = draw(c, family_of(k, opt.budget), rng);
    if (!g) return;
    GridEvaluator eval(c, methods);
    const auto res = eval(*g);
    slots[k] = {true, res.best, res.winner, std::move(*g)};
  });
  rep.samples_attempted = opt.budget;

  std::array<FamilyStats, 6> fam;
  for (std::size_t f = 0; f < fam.size(); ++f) fam[f].family = kSampleFamilies[f];
  auto note_value = [&](SampleFamily f, const Rational& v) {
    auto& s = fam[static_cast<int>(f)];
    if (!s.max_value || *s.max_value < v) s.max_value = v;
  };
  std::vector<u64> order;
  for (u64 k = 0; k < opt.budget; ++k) {
    const SampleFamily f = family_of(k, opt.budget);
    ++fam[static_cast<int>(f)].attempted;
    if (!slots[k].feasible) continue;
    ++fam[static_cast<int>(f)].feasible;
    ++rep.feasible_samples;
    ++rep.wins[slots[k].winner];
    note_value(f, to_rational(c, slots[k].value));
    order.push_back(k);
  }
  rep.evaluations = rep.feasible_samples;
  rep.families.assign(fam.begin(), fam.end());

  if (order.empty()) {
    rep.region_empty = true;
    rep.outcome = "region-empty";
    rep.verdict_pass = true;
    rep.notes.push_back("no feasible configuration found at this d, delta and epsilon");
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

  std::stable_sort(order.begin(), order.end(), [&](u64 x, u64 y) { return slots[x].value > slots[y].value; });
  std::vector<u64> starts(order.begin(), order.begin() + std::min<std::size_t>(order.size(), opt.climbs));
  for (SampleFamily f : kSampleFamilies) {
    for (u64 k : order) {
      if (family_of(k, opt.budget) != f) continue;
      if (std::find(starts.begin(), starts.end(), k) == starts.end()) starts.push_back(k);
      break;
    }
  }

  std::vector<ClimbResult> climbs(starts.size());
  detail::parallel_for(starts.size(), rep.workers, [&](u64 j) {
    Rng rng(stream_seed(opt.seed, 1, j));
    GridEvaluator eval(c, methods);
    const Slot& s = slots[starts[j]];
    climbs[j] = climb(c, eval, s.grid, s.value, rng, opt.climb_evaluations);
    for (int round = 0; round < 4; ++round) {
      lp_refine(c, eval, methods, climbs[j], rng, opt.climb_evaluations);
      auto polished = climb(c, eval, climbs[j].grid, climbs[j].value, rng, opt.climb_evaluations / 4);
      polished.evaluations += climbs[j].evaluations;
      climbs[j] = std::move(polished);
    }
  });

  // sample maximum first, then climbs in start order; ties keep the earlier
  const Grid* best_grid = &slots[order.front()].grid;
  i128 best_value = slots[order.front()].value;
  SampleFamily best_family = family_of(order.front(), opt.budget);
  for (std::size_t j = 0; j < climbs.size(); ++j) {
    rep.evaluations += climbs[j].evaluations;
    const SampleFamily f = family_of(starts[j], opt.budget);
    note_value(f, to_rational(c, climbs[j].value));
    if (climbs[j].value > best_value) {
      best_value = climbs[j].value;
      best_grid = &climbs[j].grid;
      best_family = f;
    }
  }
  rep.families.assign(fam.begin(), fam.end());

  rep.max_value = to_rational(c, best_value);
  rep.argmax = to_configuration(c, *best_grid);
  rep.argmax_family = to_string(best_family);
  BoundOptions bopt;
  bopt.methods = methods;
  rep.argmax_report = best_bound(*rep.argmax, bopt);
  if (rep.argmax_report->value != *rep.max_value) {
    throw std::logic_error("best_bound at the argmax does not reproduce the search value");
  }
  rep.verdict_pass = *rep.max_value <= opt.threshold;
  rep.outcome = rep.verdict_pass ? "pass" : "fail";
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ThetaReport explore_theta(const RegionSearchOptions& options, int bisection_steps) {
  ThetaReport out;
  // The search is deterministic, so one run answers every threshold query.
  out.search = maximize_nu(options);
  out.certified = false;
  if (!out.search.max_value) return out;
  const Rational sup = *out.search.max_value;
  Rational lo = 0;
  Rational hi = std::max(Rational(1) + options.delta, sup);
  for (int i = 0; i < bisection_steps; ++i) {
    const Rational mid = (lo + hi) / 2;
    if (sup > mid) {
      lo = mid;  // falsified
    } else {
      hi = mid;
    }
    out.bisection.push_back({lo, hi});
  }
  out.theta = sup;
  return out;
}

}  // namespace abc
