#pragma once

// Integer kernel behind the bound evaluators. Every rational quantity is
// multiplied by a common unit (2 * lcm(1..d) * common denominator) so that all
// formulas, including the halves and the divisions by p and q in the
// determinant bound, stay integral. Int is __int128 on the fast path and
// BigInt when the scaled entries are too wide.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace abc::detail {

template <class Int>
struct ScaledConfig {
  int d = 0;
  std::array<std::vector<Int>, 3> v;
  Int delta = 0;
  Int unit = 1;
};

struct RawWitness {
  int u = 0, v = 1;
  int m = 0;  // fourier position, thue modulus, extended-fourier modulus
  int p = 0, q = 0;
  std::array<std::uint64_t, 3> masks{};  // geometry: bit i-1 set when position i is chosen
};

template <class Int>
struct MethodValue {
  bool present = false;
  Int value = 0;
  RawWitness witness;
  bool certified = true;
};

// Order matches abc::Method.
inline constexpr int kMethodCount = 6;
inline constexpr int kTrivial = 0, kFourier = 1, kGeometry = 2, kDeterminant = 3, kThue = 4, kExtended = 5;

template <class Int>
struct KernelResult {
  std::array<MethodValue<Int>, kMethodCount> methods;
  int winner = -1;
  Int best = 0;
};

struct GeometryParams {
  int mitm_limit = 12;
  std::uint64_t node_cap = 50'000'000;
};

inline constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
inline constexpr std::array<std::pair<int, int>, 6> kOrderedPairs{{{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}};

template <class Int>
const Int& max_of(const Int& x, const Int& y) {
  return x < y ? y : x;
}
template <class Int>
const Int& min_of(const Int& x, const Int& y) {
  return y < x ? y : x;
}

template <class Int>
MethodValue<Int> kernel_trivial(const ScaledConfig<Int>& s) {
  std::array<Int, 3> total{0, 0, 0};
  for (int k = 0; k < 3; ++k) {
    for (const auto& x : s.v[k]) total[k] += x;
  }
  MethodValue<Int> out;
  out.present = true;
  bool first = true;
  for (auto [u, v] : kPairs) {
    Int val = total[u] + total[v];
    if (first || val < out.value) {
      out.value = val;
      out.witness.u = u;
      out.witness.v = v;
      first = false;
    }
  }
  return out;
}

template <class Int>
MethodValue<Int> kernel_fourier(const ScaledConfig<Int>& s) {
  MethodValue<Int> out;
  out.present = true;
  bool first = true;
  for (auto [u, v] : kPairs) {
    Int sum = 0, sub = 0;
    int arg = 0;
    for (int i = 1; i <= s.d; ++i) {
      const Int& mx = max_of(s.v[u][i - 1], s.v[v][i - 1]);
      sum += mx;
      if (i >= 2 && (arg == 0 || sub < mx)) {
        sub = mx;
        arg = i;
      }
    }
    Int val = (s.unit + s.delta + sum - sub) / 2;
    if (first || val < out.value) {
      out.value = val;
      out.witness.u = u;
      out.witness.v = v;
      out.witness.m = arg;
      first = false;
    }
  }
  return out;
}

template <class Int>
MethodValue<Int> kernel_determinant(const ScaledConfig<Int>& s) {
  MethodValue<Int> out;
  out.present = true;
  bool first = true;
  for (auto [u, v] : kPairs) {
    for (int p = 1; p <= s.d; ++p) {
      const Int& up = s.v[u][p - 1];
      for (int q = 1; q <= s.d; ++q) {
        const Int& vq = s.v[v][q - 1];
        Int val = s.unit + s.delta - up - vq + min_of(Int(up / q), Int(vq / p));
        if (first || val < out.value) {
          out.value = val;
          out.witness.u = u;
          out.witness.v = v;
          out.witness.p = p;
          out.witness.q = q;
          first = false;
        }
      }
    }
  }
  return out;
}

template <class Int>
MethodValue<Int> kernel_thue(const ScaledConfig<Int>& s) {
  MethodValue<Int> out;
  out.present = true;
  Int best_sum = 0;
  bool found = false;
  for (auto [u, v] : kPairs) {
    for (int p = 2; p <= s.d; ++p) {
      Int sum = 0;
      for (int i = p; i <= s.d; i += p) sum += s.v[u][i - 1] + s.v[v][i - 1];
      if (!found || best_sum < sum) {
        best_sum = sum;
        out.witness.u = u;
        out.witness.v = v;
        out.witness.m = p;
        found = true;
      }
    }
  }
  out.value = s.unit + s.delta - best_sum;
  return out;
}

template <class Int>
MethodValue<Int> kernel_extended_fourier(const ScaledConfig<Int>& s) {
  MethodValue<Int> out;
  out.present = true;
  bool first = true;
  for (auto [y, z] : kOrderedPairs) {
    Int sum = 0;
    for (int j = 1; j <= s.d; ++j) sum += max_of(s.v[y][j - 1], s.v[z][j - 1]);
    Int sub = 0;
    int arg = 0;
    for (int i = 2; i <= s.d; ++i) {
      Int part = 0;
      for (int j = i; j <= s.d; j += i) part += s.v[z][j - 1];
      if (arg == 0 || sub < part) {
        sub = part;
        arg = i;
      }
    }
    Int val = (s.unit + s.delta + sum - sub) / 2;
    if (first || val < out.value) {
      out.value = val;
      out.witness.u = y;
      out.witness.v = z;
      out.witness.m = arg;
      first = false;
    }
  }
  return out;
}

// Geometry. Position-1 entries are always worth choosing (they raise W and S
// by the same amount), so only positions i >= 2 are searched. With gain
// G = sum of chosen values and cost C = sum of (i - 1) * value the objective is
// max(unit - s1 - G, C) where s1 is the sum of the position-1 entries.
template <class Int>
struct GeometryItem {
  int vec;
  int pos;
  Int gain;
  Int cost;
};

template <class Int>
std::vector<GeometryItem<Int>> geometry_items(const ScaledConfig<Int>& s) {
  std::vector<GeometryItem<Int>> items;
  for (int i = 2; i <= s.d; ++i) {
    for (int k = 0; k < 3; ++k) {
      const Int& x = s.v[k][i - 1];
      if (x > 0) items.push_back({k, i, x, x * (i - 1)});
    }
  }
  return items;  // already ordered by position, i.e. by cost per unit gain
}

template <class Int>
struct SubsetSum {
  Int gain;
  Int cost;
  std::uint64_t mask;
};

template <class Int>
std::vector<SubsetSum<Int>> subset_sums(const std::vector<GeometryItem<Int>>& items, std::size_t from,
                                        std::size_t to) {
  std::vector<SubsetSum<Int>> out;
  out.reserve(std::size_t{1} << (to - from));
  out.push_back({Int(0), Int(0), 0});
  for (std::size_t j = from; j < to; ++j) {
    const std::size_t n = out.size();
    for (std::size_t t = 0; t < n; ++t) {
      out.push_back({out[t].gain + items[j].gain, out[t].cost + items[j].cost, out[t].mask | (std::uint64_t{1} << j)});
    }
  }
  return out;
}

template <class Int>
std::array<std::uint64_t, 3> masks_from_items(const std::vector<GeometryItem<Int>>& items, std::uint64_t chosen,
                                              int d) {
  std::array<std::uint64_t, 3> masks{};
  if (d >= 1) masks = {1, 1, 1};
  for (std::size_t j = 0; j < items.size(); ++j) {
    if (chosen >> j & 1) masks[items[j].vec] |= std::uint64_t{1} << (items[j].pos - 1);
  }
  return masks;
}

template <class Int>
MethodValue<Int> geometry_meet_in_middle(const ScaledConfig<Int>& s, const std::vector<GeometryItem<Int>>& items,
                                         const Int& rest) {
  const std::size_t half = items.size() / 2;
  const auto left = subset_sums(items, 0, half);
  auto right = subset_sums(items, half, items.size());
  std::stable_sort(right.begin(), right.end(),
                   [](const SubsetSum<Int>& x, const SubsetSum<Int>& y) { return x.cost < y.cost; });
  // prefix maximum of gain over the cost-sorted right half
  std::vector<std::size_t> arg(right.size());
  for (std::size_t j = 0; j < right.size(); ++j) {
    arg[j] = (j > 0 && !(right[arg[j - 1]].gain < right[j].gain)) ? arg[j - 1] : j;
  }

  MethodValue<Int> out;
  out.present = true;
  bool first = true;
  std::uint64_t best_mask = 0;
  auto consider = [&](const SubsetSum<Int>& l, std::size_t j) {
    const SubsetSum<Int>& r = right[arg[j]];
    Int val = max_of(Int(rest - l.gain - r.gain), Int(l.cost + r.cost));
    if (first || val < out.value) {
      out.value = val;
      best_mask = l.mask | r.mask;
      first = false;
    }
  };
  for (const auto& l : left) {
    // first j with l.cost + cost_j >= rest - l.gain - prefgain_j
    std::size_t lo = 0, hi = right.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (l.cost + right[mid].cost >= rest - l.gain - right[arg[mid]].gain) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (lo > 0) consider(l, lo - 1);
    if (lo < right.size()) consider(l, lo);
  }
  out.witness.masks = masks_from_items(items, best_mask, s.d);
  return out;
}

template <class Int>
class GeometryBranchAndBound {
 public:
  GeometryBranchAndBound(const std::vector<GeometryItem<Int>>& items, const Int& rest, std::uint64_t cap)
      : items_(items), rest_(rest), cap_(cap) {}

  void run() {
    best_ = max_of(rest_, Int(0));
    chosen_.assign(items_.size(), 0);
    best_chosen_ = chosen_;
    dfs(0, Int(0), Int(0));
  }

  const Int& best() const { return best_; }
  bool complete() const { return !aborted_; }
  const std::vector<char>& chosen() const { return best_chosen_; }

 private:
  // Fractional relaxation: items are ordered by cost per unit gain, so the
  // greedy fractional fill is optimal for the relaxation.
  Int lower_bound(std::size_t from, Int gain, Int cost) const {
    for (std::size_t j = from; j < items_.size(); ++j) {
      const auto& it = items_[j];
      if (rest_ - gain - it.gain >= cost + it.cost) {
        gain += it.gain;
        cost += it.cost;
        continue;
      }
      const Int gap = rest_ - gain - cost;
      if (gap <= 0) return cost;
      return cost + gap * it.cost / (it.gain + it.cost);
    }
    return max_of(Int(rest_ - gain), cost);
  }

  void dfs(std::size_t j, const Int& gain, const Int& cost) {
    if (aborted_) return;
    if (++nodes_ > cap_) {
      aborted_ = true;
      return;
    }
    const Int val = max_of(Int(rest_ - gain), cost);
    if (val < best_) {
      best_ = val;
      best_chosen_ = chosen_;
    }
    if (j == items_.size() || !(lower_bound(j, gain, cost) < best_)) return;
    chosen_[j] = 1;
    dfs(j + 1, gain + items_[j].gain, cost + items_[j].cost);
    chosen_[j] = 0;
    dfs(j + 1, gain, cost);
  }

  const std::vector<GeometryItem<Int>>& items_;
  Int rest_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  Int best_ = 0;
  std::vector<char> chosen_, best_chosen_;
};

template <class Int>
MethodValue<Int> kernel_geometry(const ScaledConfig<Int>& s, const GeometryParams& params) {
  Int s1 = 0;
  for (int k = 0; k < 3; ++k) s1 += s.v[k][0];
  const Int rest = s.unit - s1;
  const auto items = geometry_items(s);

  MethodValue<Int> out;
  if (s.d <= params.mitm_limit && items.size() <= 40) {
    out = geometry_meet_in_middle(s, items, rest);
  } else {
    GeometryBranchAndBound<Int> search(items, rest, params.node_cap);
    search.run();
    out.present = true;
    out.value = search.best();
    out.certified = search.complete();
    out.witness.masks = {1, 1, 1};
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (search.chosen()[j]) out.witness.masks[items[j].vec] |= std::uint64_t{1} << (items[j].pos - 1);
    }
  }
  out.value += s.delta;
  return out;
}

template <class Int>
KernelResult<Int> evaluate_kernel(const ScaledConfig<Int>& s, unsigned methods, const GeometryParams& params) {
  KernelResult<Int> res;
  if (methods >> kTrivial & 1) res.methods[kTrivial] = kernel_trivial(s);
  if (methods >> kFourier & 1) res.methods[kFourier] = kernel_fourier(s);
  if (methods >> kGeometry & 1) res.methods[kGeometry] = kernel_geometry(s, params);
  if (methods >> kDeterminant & 1) res.methods[kDeterminant] = kernel_determinant(s);
  if (methods >> kThue & 1) res.methods[kThue] = kernel_thue(s);
  if (methods >> kExtended & 1) res.methods[kExtended] = kernel_extended_fourier(s);
  for (int k = 0; k < kMethodCount; ++k) {
    if (!res.methods[k].present) continue;
    if (res.winner < 0 || res.methods[k].value < res.best) {
      res.winner = k;
      res.best = res.methods[k].value;
    }
  }
  return res;
}

}  // namespace abc::detail
