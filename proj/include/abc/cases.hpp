#pragma once

// Exact replay of the fixed constants behind the case analysis of the
// exponent region. Every quantity is a rational; epsilon is either a given
// rational or, when passed as 0, a positive infinitesimal.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abc/exact.hpp"

namespace abc {

// c0 + c1 * eps + c2 * eps^2
struct EpsPoly {
  Rational c0, c1, c2;

  EpsPoly() = default;
  EpsPoly(Rational constant) : c0(std::move(constant)) {}  // NOLINT: implicit by design
  EpsPoly(Rational a, Rational b, Rational c) : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}

  static EpsPoly eps() { return {0, 1, 0}; }
  static EpsPoly eps2() { return {0, 0, 1}; }

  Rational at(const Rational& e) const { return c0 + c1 * e + c2 * e * e; }
  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  // Sign for eps -> 0+ (lexicographic in the coefficients).
  int infinitesimal_sign() const;

  friend EpsPoly operator+(const EpsPoly& x, const EpsPoly& y) { return {x.c0 + y.c0, x.c1 + y.c1, x.c2 + y.c2}; }
  friend EpsPoly operator-(const EpsPoly& x, const EpsPoly& y) { return {x.c0 - y.c0, x.c1 - y.c1, x.c2 - y.c2}; }
  friend EpsPoly operator*(const Rational& k, const EpsPoly& x) { return {k * x.c0, k * x.c1, k * x.c2}; }
  friend bool operator==(const EpsPoly&, const EpsPoly&) = default;
};

enum class Relation { less, less_equal, equal, greater_equal, greater };
std::string to_string(Relation r);

struct CaseStep {
  std::string label;
  Relation relation = Relation::less;
  Rational lhs, rhs;   // at the given epsilon (at 0 in infinitesimal mode)
  Rational slack;      // distance to failure, positive inside; 0 for equalities that hold
  bool holds = false;
  bool tight = false;  // holds with zero slack
  bool required = true;
  std::string note;
};

struct CaseCheck {
  int index = 0;
  std::string name;
  bool passed = false;
  std::vector<CaseStep> steps;
};

using PlanePoint = std::pair<Rational, Rational>;

struct CaseCheckReport {
  Rational delta, epsilon;
  bool epsilon_infinitesimal = false;
  std::vector<CaseCheck> checks;
  std::vector<PlanePoint> polygon;  // the clipped triangle
  bool all_passed = false;

  const CaseCheck& at(const std::string& name) const;
};

// a * s1 + b * s2 <= c
struct HalfPlane {
  Rational a, b, c;
};

// Intersection of the two boundary lines; nullopt when parallel.
std::optional<PlanePoint> intersect_boundaries(const HalfPlane& p, const HalfPlane& q);

// One Sutherland-Hodgman step on a convex polygon (vertices in order).
// Repeated vertices are collapsed.
std::vector<PlanePoint> clip(const std::vector<PlanePoint>& polygon, const HalfPlane& h);

// Runs the eleven catalog checks. Negative delta or epsilon throws
// ArgumentError; failing checks are report entries.
CaseCheckReport verify_case_catalog(const Rational& delta, const Rational& epsilon = 0);

}  // namespace abc
