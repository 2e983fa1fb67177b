#include "abc/cases.hpp"

#include <algorithm>

#include "abc/errors.hpp"

namespace abc {
namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }
Rational D(std::string_view text) { return decimal(text); }

const Rational k19_600 = R(19, 600);  // 0.0316...
const Rational k1_75 = R(1, 75);      // 0.0133...
const Rational k1_150 = R(1, 150);    // 0.0066...
const Rational k29_60 = R(29, 60);    // 0.4833...

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

class Catalog {
 public:
  Catalog(Rational delta, Rational eps) : delta_(std::move(delta)), eps_(std::move(eps)), infinitesimal_(eps_ == 0) {}

  const Rational& delta() const { return delta_; }
  bool infinitesimal() const { return infinitesimal_; }

  template <class L, class H>
  CaseStep step(std::string label, const L& lhs, Relation rel, const H& rhs, bool required = true,
                std::string note = {}) const {
    return compare(std::move(label), as_poly(lhs), rel, as_poly(rhs), required, std::move(note));
  }

 private:
  static EpsPoly as_poly(const EpsPoly& x) { return x; }
  template <class T>
  static EpsPoly as_poly(const T& x) {
    return EpsPoly(Rational(x));
  }

  CaseStep compare(std::string label, const EpsPoly& lhs, Relation rel, const EpsPoly& rhs, bool required,
                   std::string note) const {
    CaseStep s;
    s.label = std::move(label);
    s.relation = rel;
    s.required = required;
    s.note = std::move(note);
    const Rational e = infinitesimal_ ? Rational(0) : eps_;
    s.lhs = lhs.at(e);
    s.rhs = rhs.at(e);
    const bool upper = rel == Relation::less || rel == Relation::less_equal || rel == Relation::equal;
    const EpsPoly diff = upper ? rhs - lhs : lhs - rhs;
    const int sg = infinitesimal_ ? diff.infinitesimal_sign() : sign(diff.at(e));
    s.slack = diff.at(e);
    switch (rel) {
      case Relation::less:
      case Relation::greater:
        s.holds = sg > 0;
        break;
      case Relation::less_equal:
      case Relation::greater_equal:
        s.holds = sg >= 0;
        s.tight = sg == 0;
        break;
      case Relation::equal:
        s.holds = sg == 0;
        break;
    }
    return s;
  }

  Rational delta_, eps_;
  bool infinitesimal_;
};

CaseCheck finish(int index, std::string name, std::vector<CaseStep> steps) {
  CaseCheck c;
  c.index = index;
  c.name = std::move(name);
  c.passed = std::all_of(steps.begin(), steps.end(), [](const CaseStep& s) { return !s.required || s.holds; });
  c.steps = std::move(steps);
  return c;
}

// Boundary lines of the triangle: 4 s1 + 3 s2 <= 0.71, 4 s1 + s2 >= 0.4,
// 2 s1 - s2 <= 0.025.
const HalfPlane kUpper{4, 3, D("0.71")};
const HalfPlane kLower{-4, -1, D("-0.4")};
const HalfPlane kSlope{2, -1, D("0.025")};

std::vector<PlanePoint> expected_vertices() {
  return {{D("0.06125"), D("0.155")}, {D("0.0785"), D("0.132")}, {R(17, 240), R(7, 60)}};
}

std::string point_text(const PlanePoint& p) { return "(" + to_string(p.first) + ", " + to_string(p.second) + ")"; }

CaseCheck triangle_vertices(const Catalog& cat) {
  const auto expected = expected_vertices();
  const std::array<std::pair<std::string, std::pair<HalfPlane, HalfPlane>>, 3> pairs{
      {{"L3/L4", {kUpper, kLower}}, {"L3/L6", {kUpper, kSlope}}, {"L4/L6", {kLower, kSlope}}}};
  std::vector<CaseStep> steps;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto p = intersect_boundaries(pairs[j].second.first, pairs[j].second.second);
    if (!p) {
      steps.push_back(cat.step(pairs[j].first + " intersect", R(0), Relation::equal, R(1), true, "parallel lines"));
      continue;
    }
    steps.push_back(cat.step(pairs[j].first + " s1", p->first, Relation::equal, expected[j].first));
    steps.push_back(cat.step(pairs[j].first + " s2", p->second, Relation::equal, expected[j].second));
  }
  return finish(1, "triangle-vertices", std::move(steps));
}

CaseCheck halfplane_coverage(const Catalog& cat, std::vector<PlanePoint>& polygon) {
  polygon = {{R(0), R(0)}, {R(1), R(0)}, {R(1), R(1)}, {R(0), R(1)}};
  for (const auto& h : {kUpper, kLower, kSlope}) polygon = clip(polygon, h);
  std::vector<CaseStep> steps;
  steps.push_back(cat.step("clipped polygon vertex count", R(static_cast<long long>(polygon.size())),
                           Relation::equal, R(3)));
  for (const auto& v : expected_vertices()) {
    const bool found = std::find(polygon.begin(), polygon.end(), v) != polygon.end();
    steps.push_back(cat.step("vertex " + point_text(v) + " on the clipped polygon", R(found ? 1 : 0),
                             Relation::equal, R(1)));
  }
  return finish(2, "halfplane-coverage", std::move(steps));
}

CaseCheck strip_coverage(const Catalog& cat, const std::vector<PlanePoint>& polygon) {
  std::vector<CaseStep> steps;
  if (polygon.empty()) {
    steps.push_back(cat.step("polygon non-empty", R(0), Relation::equal, R(1)));
  }
  // a convex polygon lies in the strip iff its vertices do
  for (const auto& v : polygon) {
    steps.push_back(cat.step("s2 of " + point_text(v) + " >= 0.066", v.second, Relation::greater_equal, D("0.066")));
    steps.push_back(cat.step("s2 of " + point_text(v) + " <= 0.204", v.second, Relation::less_equal, D("0.204")));
  }
  return finish(3, "strip-coverage", std::move(steps));
}

CaseCheck case11_contradiction(const Catalog& cat) {
  const Rational& d = cat.delta();
  const EpsPoly eps = EpsPoly::eps();
  std::vector<CaseStep> steps;
  steps.push_back(cat.step("0.66 - 0.04 - 0.51/2 = 0.365", D("0.66") - D("0.04") - D("0.51") / 2, Relation::equal,
                           D("0.365")));
  steps.push_back(cat.step("0.365 - 1/3 = 19/600", D("0.365") - R(1, 3), Relation::equal, k19_600));
  const EpsPoly bound = R(3, 2) * (EpsPoly(k1_75 + d) + eps) + EpsPoly(3 * d);
  steps.push_back(cat.step("3/2 (1/75 + delta + eps) + 3 delta <= 19/600", bound, Relation::less_equal, k19_600,
                           true, "the derived lower bound 19/600 < 3/2 delta_a + 3 delta is then impossible"));
  steps.push_back(cat.step("3/2 (1/75 + delta + eps) + 3 delta <= 0.02 + 5 delta", bound, Relation::less_equal,
                           D("0.02") + 5 * d, false, "simplified form; needs eps <= delta / 3"));
  return finish(4, "case1.1-contradiction", std::move(steps));
}

CaseCheck case12_chain(const Catalog& cat) {
  const Rational& d = cat.delta();
  std::vector<CaseStep> steps;
  // 6 s1 + (5/2 s2 - 0.29 + 13/2 delta) + 6 (0.34 - s1 - s2 + delta), coefficient by coefficient
  steps.push_back(cat.step("constant: -0.29 + 6 * 0.34 = 1.75", D("-0.29") + 6 * D("0.34"), Relation::equal,
                           D("1.75")));
  steps.push_back(cat.step("s1 coefficient: 6 - 6 = 0", R(6) - 6, Relation::equal, R(0)));
  steps.push_back(cat.step("s2 coefficient: 5/2 - 6 = -7/2", R(5, 2) - 6, Relation::equal, R(-7, 2)));
  steps.push_back(cat.step("delta coefficient: 13/2 + 6 <= 13", R(13, 2) + 6, Relation::less_equal, R(13)));
  steps.push_back(cat.step("2/15 + 1.75/5 = 29/60", R(2, 15) + D("1.75") / 5, Relation::equal, k29_60));
  const EpsPoly chain =
      EpsPoly(k29_60 - R(7, 10) * D("0.3") + R(13, 5) * d) + R(2, 5) * (EpsPoly(k1_150) + EpsPoly::eps2());
  steps.push_back(cat.step("29/60 - 7/10 (0.3) + 2/5 (1/150 + eps^2) + 13/5 delta < 0.279", chain, Relation::less,
                           D("0.279")));
  steps.push_back(cat.step("1 + delta + 0.279 <= 1.3", 1 + d + D("0.279"), Relation::less_equal, D("1.3")));
  return finish(5, "case1.2-chain", std::move(steps));
}

CaseCheck subcase_s1_nu1(const Catalog& cat) {
  const Rational& d = cat.delta();
  std::vector<CaseStep> steps;
  steps.push_back(cat.step("2/3 * 3/4 (0.09) = 0.09/2", R(2, 3) * R(3, 4) * D("0.09"), Relation::equal,
                           D("0.09") / 2));
  steps.push_back(cat.step("1 + delta - 0.32 - 0.09/2 <= 0.636", 1 + d - D("0.32") - D("0.09") / 2,
                           Relation::less_equal, D("0.636")));
  steps.push_back(cat.step("2 * 3/4 (0.09) = 0.135", 2 * R(3, 4) * D("0.09"), Relation::equal, D("0.135")));
  const EpsPoly nu1 = EpsPoly(D("0.34") + d) + R(1, 5) * (EpsPoly(R(4, 3) + k1_150 + D("0.135")) + EpsPoly::eps2());
  steps.push_back(cat.step("0.34 + delta + 1/5 (4/3 + 1/150 + eps^2 + 0.135) < 0.637", nu1, Relation::less,
                           D("0.637")));
  return finish(6, "subcaseS1-nu1", std::move(steps));
}

CaseCheck subcase_s1_nu2(const Catalog& cat) {
  const Rational& d = cat.delta();
  std::vector<CaseStep> steps;
  const Rational nu2 = R(2, 3) + D("0.3") - 2 * (D("0.3") - d) + R(9, 4) * D("0.09");
  steps.push_back(cat.step("2/3 + 0.3 - 2 (0.3 - delta) + 9/4 (0.09) < 0.57 + 2 delta", nu2, Relation::less,
                           D("0.57") + 2 * d));
  // -delta_bc <= 1/75 + 2 delta
  steps.push_back(
      cat.step("0.57 + (1/75 + 2 delta) + 2 delta < 0.6", D("0.57") + k1_75 + 4 * d, Relation::less, D("0.6")));
  steps.push_back(cat.step("max(0.637, 0.6) + eps < 0.64", EpsPoly(D("0.637")) + EpsPoly::eps(), Relation::less,
                           D("0.64"), false, "holds for eps < 0.003"));
  return finish(7, "subcaseS1-nu2", std::move(steps));
}

CaseCheck subcase_s2_a3(const Catalog& cat) {
  const Rational& d = cat.delta();
  std::vector<CaseStep> steps;
  steps.push_back(cat.step("0.66 - 5/2 (0.01) - 1/2 (0.51) = 0.38",
                           D("0.66") - R(5, 2) * D("0.01") - D("0.51") / 2, Relation::equal, D("0.38")));
  // the s1 terms cancel on both sides
  const EpsPoly lower = EpsPoly(D("0.66") - R(5, 2) * D("0.01") - (D("0.51") + R(3, 2) * d) / 2 - d) -
                        R(5, 2) * EpsPoly::eps();
  steps.push_back(cat.step("0.66 - 5/2 (0.01 + eps) - 1/2 (0.51 + 3 delta / 2) - delta >= 0.38 - 3 delta", lower,
                           Relation::greater_equal, D("0.38") - 3 * d, true, "needs eps <= delta / 2"));
  steps.push_back(cat.step("0.38 - 3 delta > 0.34 + delta", D("0.38") - 3 * d, Relation::greater, D("0.34") + d));
  steps.push_back(cat.step("0.33 - delta / 2 >= 0.32", D("0.33") - d / 2, Relation::greater_equal, D("0.32")));
  return finish(8, "subcaseS2-a3", std::move(steps));
}

CaseCheck geotau3_overlap(const Catalog& cat) {
  const Rational& d = cat.delta();
  std::vector<CaseStep> steps;
  // intervals (0.34 - s1 - s2 + delta, 0.33 - s2/2 - delta/2) and (0.34 - s1 + delta, 0.33 - delta/2)
  // overlap iff s1 - s2/2 > 0.01 + 3/2 delta; the subcase gives s1 - s2/2 > 0.0125
  steps.push_back(cat.step("0.0125 - 0.01 - 3/2 delta >= 0", D("0.0125") - D("0.01") - R(3, 2) * d,
                           Relation::greater_equal, R(0)));
  steps.push_back(cat.step("lower ends ordered for s2 >= 0: s2 coefficient -1 <= 0", R(-1), Relation::less_equal,
                           R(0)));
  steps.push_back(cat.step("upper ends ordered for s2 >= 0: s2 coefficient -1/2 <= 0", R(-1, 2),
                           Relation::less_equal, R(0)));
  return finish(9, "geotau3-overlap", std::move(steps));
}

CaseCheck subcase_s6_final(const Catalog& cat) {
  const Rational& d = cat.delta();
  std::vector<CaseStep> steps;
  steps.push_back(cat.step("0.33 - delta/2 over 2 > 0.164", (D("0.33") - d / 2) / 2, Relation::greater, D("0.164")));
  const EpsPoly chain = EpsPoly(R(5, 9) + R(1, 3) * (k1_75 + d) + (k1_150 + d) - R(5, 3) * D("0.164")) +
                        R(1, 3) * EpsPoly::eps();
  steps.push_back(cat.step("5/9 + 1/3 (1/75 + delta + eps) + (1/150 + delta) - 5/3 (0.164) <= 0.295", chain,
                           Relation::less_equal, D("0.295")));
  steps.push_back(cat.step("1 + delta + 0.295 <= 1.296", 1 + d + D("0.295"), Relation::less_equal, D("1.296")));
  steps.push_back(cat.step("1.296/2 + 0.036/3 <= 0.66", D("1.296") / 2 + D("0.036") / 3, Relation::less_equal,
                           D("0.66")));
  steps.push_back(cat.step("2 (0.036) = 0.072", 2 * D("0.036"), Relation::equal, D("0.072")));
  steps.push_back(cat.step("0.072 > 0.066", D("0.072"), Relation::greater, D("0.066")));
  return finish(10, "subcaseS6-final", std::move(steps));
}

CaseCheck robin_derivations(const Catalog& cat) {
  const Rational& d = cat.delta();
  const EpsPoly eps = EpsPoly::eps();
  const EpsPoly eps2 = EpsPoly::eps2();
  std::vector<CaseStep> steps;
  // pairwise totals >= 0.66 - eps^2 and total_x = 1/3 - delta_x
  steps.push_back(cat.step("2/3 - (0.66 - eps^2) <= 1/150 + eps^2", EpsPoly(R(2, 3) - D("0.66")) + eps2,
                           Relation::less_equal, EpsPoly(k1_150) + eps2));
  // 0.32 - delta <= total_x <= 0.34 + delta - eps/2
  steps.push_back(cat.step("1/3 - (0.34 + delta - eps/2) >= -1/150 - delta",
                           EpsPoly(R(1, 3) - D("0.34") - d) + R(1, 2) * eps, Relation::greater_equal,
                           EpsPoly(-k1_150 - d)));
  steps.push_back(cat.step("1/3 - (0.32 - delta) <= 1/75 + delta + eps", EpsPoly(R(1, 3) - D("0.32") + d),
                           Relation::less_equal, EpsPoly(k1_75 + d) + eps));
  // grand total <= 1 + delta - eps gives delta_s >= eps - delta
  steps.push_back(cat.step("eps - delta > -delta", eps - EpsPoly(d), Relation::greater, EpsPoly(-d), true,
                           "strict only for eps > 0"));
  // 2 delta_s = delta_ab + delta_ac + delta_bc <= 3 (1/150 + eps^2)
  steps.push_back(cat.step("3 (1/150 + eps^2) / 2 <= 0.01 + eps", R(1, 2) * (R(3) * (EpsPoly(k1_150) + eps2)),
                           Relation::less_equal, EpsPoly(D("0.01")) + eps));
  return finish(11, "robin-derivations", std::move(steps));
}

}  // namespace

int EpsPoly::infinitesimal_sign() const {
  if (c0 != 0) return sign(c0);
  if (c1 != 0) return sign(c1);
  return sign(c2);
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::less:
      return "<";
    case Relation::less_equal:
      return "<=";
    case Relation::equal:
      return "=";
    case Relation::greater_equal:
      return ">=";
    case Relation::greater:
      return ">";
  }
  return "?";
}

const CaseCheck& CaseCheckReport::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw ArgumentError("no case check named " + name);
}

std::optional<PlanePoint> intersect_boundaries(const HalfPlane& p, const HalfPlane& q) {
  const Rational det = p.a * q.b - p.b * q.a;
  if (det == 0) return std::nullopt;
  return PlanePoint{(p.c * q.b - p.b * q.c) / det, (p.a * q.c - p.c * q.a) / det};
}

std::vector<PlanePoint> clip(const std::vector<PlanePoint>& polygon, const HalfPlane& h) {
  std::vector<PlanePoint> out;
  const std::size_t n = polygon.size();
  auto value = [&](const PlanePoint& x) { return h.a * x.first + h.b * x.second - h.c; };
  auto push = [&](const PlanePoint& x) {
    if (out.empty() || out.back() != x) out.push_back(x);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint& cur = polygon[i];
    const PlanePoint& next = polygon[(i + 1) % n];
    const Rational vc = value(cur), vn = value(next);
    if (vc <= 0) push(cur);
    if ((vc < 0 && vn > 0) || (vc > 0 && vn < 0)) {
      const Rational t = vc / (vc - vn);
      push({cur.first + t * (next.first - cur.first), cur.second + t * (next.second - cur.second)});
    }
  }
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

CaseCheckReport verify_case_catalog(const Rational& delta, const Rational& epsilon) {
  if (delta < 0 || epsilon < 0) throw ArgumentError("delta and epsilon must be non-negative");
  const Catalog cat(delta, epsilon);
  CaseCheckReport rep;
  rep.delta = delta;
  rep.epsilon = epsilon;
  rep.epsilon_infinitesimal = cat.infinitesimal();
  rep.checks.push_back(triangle_vertices(cat));
  rep.checks.push_back(halfplane_coverage(cat, rep.polygon));
  rep.checks.push_back(strip_coverage(cat, rep.polygon));
  rep.checks.push_back(case11_contradiction(cat));
  rep.checks.push_back(case12_chain(cat));
  rep.checks.push_back(subcase_s1_nu1(cat));
  rep.checks.push_back(subcase_s1_nu2(cat));
  rep.checks.push_back(subcase_s2_a3(cat));
  rep.checks.push_back(geotau3_overlap(cat));
  rep.checks.push_back(subcase_s6_final(cat));
  rep.checks.push_back(robin_derivations(cat));
  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CaseCheck& c) { return c.passed; });
  return rep;
}

}  // namespace abc
