#include "abc/exponents.hpp"

#include "abc/errors.hpp"

namespace abc {

Rational ExponentConfiguration::total(int k) const {
  Rational sum = 0;
  for (const auto& v : vec(k)) sum += v;
  return sum;
}

Rational ExponentConfiguration::weighted_total(int k) const {
  Rational sum = 0;
  const auto& v = vec(k);
  for (std::size_t i = 0; i < v.size(); ++i) sum += v[i] * static_cast<int>(i + 1);
  return sum;
}

ExponentConfiguration ExponentConfiguration::permuted(const std::array<int, 3>& order) const {
  ExponentConfiguration out = *this;
  for (int k = 0; k < 3; ++k) out.vec(k) = vec(order[k]);
  return out;
}

void validate(const ExponentConfiguration& cfg) {
  if (cfg.d < 1) throw ArgumentError("configuration needs d >= 1");
  for (int k = 0; k < 3; ++k) {
    const auto& v = cfg.vec(k);
    if (v.size() != static_cast<std::size_t>(cfg.d)) {
      throw ArgumentError(std::string("vector ") + vector_name(k) + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(cfg.d));
    }
    for (const auto& x : v) {
      if (x < 0) throw ArgumentError(std::string("vector ") + vector_name(k) + " has a negative entry");
    }
  }
  if (cfg.delta < 0) throw ArgumentError("delta must be non-negative");
  if (cfg.epsilon < 0) throw ArgumentError("epsilon must be non-negative");
}

ExponentConfiguration zero_configuration(int d) {
  ExponentConfiguration cfg;
  cfg.d = d;
  cfg.a.assign(d, 0);
  cfg.b.assign(d, 0);
  cfg.c.assign(d, 0);
  return cfg;
}

char vector_name(int k) { return "abc"[k]; }

}  // namespace abc
