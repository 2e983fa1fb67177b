#pragma once

// Dense simplex for  max c.z  subject to  A z <= b, z >= 0, b >= 0, so the
// origin is a feasible start. Floating point: callers use the solution only as
// a proposal and re-check it exactly.

#include <cmath>
#include <cstddef>
#include <vector>

namespace abc::detail {

struct LinearProgram {
  std::size_t vars = 0;
  std::vector<std::vector<double>> A;  // rows of length vars
  std::vector<double> b;               // all >= 0
  std::vector<double> c;               // length vars
};

struct LpSolution {
  bool optimal = false;
  bool unbounded = false;
  double value = 0.0;
  std::vector<double> z;
};

inline LpSolution solve_lp(const LinearProgram& lp, int max_pivots = 20'000) {
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.vars;
  // Condensed tableau: x_B = b - T x_N, objective v + c.x_N.
  std::vector<std::vector<double>> T = lp.A;
  std::vector<double> rhs = lp.b;
  std::vector<double> cost = lp.c;
  double v = 0.0;
  std::vector<std::size_t> nonbasic(n), basic(m);
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
  constexpr double eps = 1e-11;

  LpSolution sol;
  int degenerate = 0;
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    // Dantzig's rule, Bland's rule after a run of degenerate pivots
    std::size_t s = n;
    if (degenerate < 50) {
      double best = eps;
      for (std::size_t j = 0; j < n; ++j) {
        if (cost[j] > best) {
          best = cost[j];
          s = j;
        }
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        if (cost[j] > eps && (s == n || nonbasic[j] < nonbasic[s])) s = j;
      }
    }
    if (s == n) {
      sol.optimal = true;
      break;
    }
    std::size_t r = m;
    double ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][s] <= eps) continue;
      const double q = rhs[i] / T[i][s];
      if (r == m || q < ratio - 1e-15 || (q <= ratio + 1e-15 && basic[i] < basic[r])) {
        r = i;
        ratio = q;
      }
    }
    if (r == m) {
      sol.unbounded = true;
      return sol;
    }
    degenerate = rhs[r] <= eps ? degenerate + 1 : 0;

    const double p = T[r][s];
    for (std::size_t j = 0; j < n; ++j) T[r][j] /= p;
    rhs[r] /= p;
    T[r][s] = 1.0 / p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = T[i][s];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != s) T[i][j] -= f * T[r][j];
      }
      rhs[i] -= f * rhs[r];
      if (rhs[i] < 0.0 && rhs[i] > -1e-12) rhs[i] = 0.0;
      T[i][s] = -f * T[r][s];
    }
    const double f = cost[s];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != s) cost[j] -= f * T[r][j];
    }
    v += f * rhs[r];
    cost[s] = -f * T[r][s];
    std::swap(basic[r], nonbasic[s]);
  }
  if (!sol.optimal) return sol;
  sol.value = v;
  sol.z.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basic[i] < n) sol.z[basic[i]] = rhs[i];
  }
  return sol;
}

}  // namespace abc::detail
