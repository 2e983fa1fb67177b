#pragma once

#include <array>
#include <string>
#include <vector>

#include "abc/exact.hpp"

namespace abc {

// Exponent vectors a, b, c of length d (X_i = X^{a_i}, Y_i = X^{b_i},
// Z_i = X^{c_i}) together with the slack parameters delta and epsilon.
// Vector positions are 1-based in every accessor taking an index i.
struct ExponentConfiguration {
  int d = 0;
  std::vector<Rational> a, b, c;
  Rational delta = 0;
  Rational epsilon = 0;

  // k = 0, 1, 2 selects a, b, c
  const std::vector<Rational>& vec(int k) const { return k == 0 ? a : (k == 1 ? b : c); }
  std::vector<Rational>& vec(int k) { return k == 0 ? a : (k == 1 ? b : c); }

  Rational total(int k) const;
  Rational total_a() const { return total(0); }
  Rational total_b() const { return total(1); }
  Rational total_c() const { return total(2); }
  // sum_i i * v_i
  Rational weighted_total(int k) const;

  // total_a = 1/3 - delta_a, and so on
  Rational delta_a() const { return Rational(1, 3) - total_a(); }
  Rational delta_b() const { return Rational(1, 3) - total_b(); }
  Rational delta_c() const { return Rational(1, 3) - total_c(); }
  Rational delta_ab() const { return delta_a() + delta_b(); }
  Rational delta_ac() const { return delta_a() + delta_c(); }
  Rational delta_bc() const { return delta_b() + delta_c(); }
  Rational delta_s() const { return delta_a() + delta_b() + delta_c(); }

  Rational s(int i) const { return a.at(i - 1) + b.at(i - 1) + c.at(i - 1); }
  Rational M(int i) const { return std::max(a.at(i - 1), b.at(i - 1)); }
  Rational m(int i) const { return std::min(a.at(i - 1), b.at(i - 1)); }
  Rational t(int i) const { return b.at(i - 1) + c.at(i - 1); }

  // Same configuration with the vectors reordered: result.vec(k) = vec(order[k]).
  ExponentConfiguration permuted(const std::array<int, 3>& order) const;
};

// Throws ArgumentError unless d >= 1, the vectors have length d, and every
// entry, delta and epsilon are non-negative.
void validate(const ExponentConfiguration& cfg);

ExponentConfiguration zero_configuration(int d);

char vector_name(int k);  // 'a', 'b', 'c'

}  // namespace abc
