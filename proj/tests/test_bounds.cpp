#include <doctest.h>

#include <random>

#include "abc/bounds.hpp"
#include "abc/errors.hpp"

using namespace abc;

namespace {

ExponentConfiguration make(std::vector<Rational> a, std::vector<Rational> b, std::vector<Rational> c,
                           Rational delta = 0) {
  ExponentConfiguration cfg;
  cfg.d = static_cast<int>(a.size());
  cfg.a = std::move(a);
  cfg.b = std::move(b);
  cfg.c = std::move(c);
  cfg.delta = delta;
  return cfg;
}

// Entries are multiples of 1/120 in [0, 1/2], many of them zero so that ties
// and empty-max conventions are exercised.
ExponentConfiguration random_config(std::mt19937_64& rng, int max_d) {
  ExponentConfiguration cfg;
  cfg.d = 1 + static_cast<int>(rng() % max_d);
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < cfg.d; ++i) {
      const bool zero = rng() % 4 == 0;
      cfg.vec(k).push_back(zero ? Rational(0) : Rational(static_cast<long>(rng() % 61), 120));
    }
  }
  cfg.delta = Rational(static_cast<long>(rng() % 11), 1000);
  cfg.epsilon = Rational(static_cast<long>(rng() % 3), 1000);
  return cfg;
}

const Method kSingle[] = {Method::trivial, Method::fourier, Method::geometry, Method::determinant, Method::thue,
                          Method::extended_fourier};

}  // namespace

TEST_CASE("trivial bound examples") {
  const auto r = trivial_bound(make({decimal("0.33")}, {decimal("0.33")}, {decimal("0.34")}));
  CHECK(r.value == Rational(33, 50));
  const auto& w = std::get<PairWitness>(r.witness);
  CHECK(w.u == 0);
  CHECK(w.v == 1);
  CHECK(trivial_bound(make({Rational(1, 3)}, {Rational(1, 3)}, {Rational(1, 3)})).value == Rational(2, 3));
  CHECK(trivial_bound(zero_configuration(3)).value == 0);
}

TEST_CASE("fourier bound examples") {
  CHECK(fourier_bound(make({Rational(1, 5)}, {Rational(3, 10)}, {Rational(1)})).value == Rational(13, 20));
  const auto cfg = make({0, Rational(1, 5)}, {0, Rational(1, 10)}, {1, 0});
  CHECK(fourier_bound(cfg).value == Rational(1, 2));
  auto shifted = cfg;
  shifted.delta = Rational(1, 1000);
  CHECK(fourier_bound(shifted).value == Rational(1001, 2000));
}

TEST_CASE("geometry bound examples") {
  CHECK(geometry_bound(make({Rational(1, 3)}, {Rational(1, 3)}, {Rational(1)})).value == 0);
  const auto cfg = make({0, decimal("0.17")}, {0, decimal("0.17")}, {0, decimal("0.5")});
  const auto r = geometry_bound(cfg);
  CHECK(r.value == Rational(1, 2));
  CHECK(geometry_bound_exhaustive(cfg).value == Rational(1, 2));
  for (int d = 1; d <= 5; ++d) {
    auto z = zero_configuration(d);
    z.delta = Rational(1, 7);
    CHECK(geometry_bound(z).value <= 1 + z.delta);
  }
}

TEST_CASE("determinant and thue examples") {
  CHECK(determinant_bound(zero_configuration(2)).value == 1);
  auto z = zero_configuration(3);
  z.delta = Rational(1, 1000);
  CHECK(determinant_bound(z).value == Rational(1001, 1000));
  CHECK(determinant_bound(make({Rational(1, 5), 0}, {0, Rational(3, 10)}, {0, 0})).value == Rational(3, 5));

  auto one = zero_configuration(1);
  one.a = {Rational(1, 3)};
  one.delta = Rational(1, 100);
  CHECK(thue_bound(one).value == Rational(101, 100));
  const auto t = thue_bound(make({0, decimal("0.1"), 0, decimal("0.05")}, {0, decimal("0.2"), 0, decimal("0.1")},
                                 {0, 0, 0, 0}));
  CHECK(t.value == Rational(11, 20));
  const auto& w = std::get<ThueWitness>(t.witness);
  CHECK(w.p == 2);
  CHECK(((w.u == 0 && w.v == 1) || (w.u == 1 && w.v == 0)));
}

TEST_CASE("best bound reports every component") {
  CHECK(best_bound(zero_configuration(2)).value == 0);
  CHECK(*best_bound(zero_configuration(2)).winner == Method::trivial);
  const auto cfg = make({0, Rational(1, 5)}, {0, Rational(1, 10)}, {1, 0});
  const auto best = best_bound(cfg);
  REQUIRE(best.components.size() == 5);
  Rational lowest = best.components.front().value;
  for (const auto& comp : best.components) {
    CHECK(comp.value == evaluate(comp.method, cfg).value);
    lowest = std::min(lowest, comp.value);
  }
  CHECK(best.value == lowest);
  // I'' = {1} on c = (1, 0): max(1, 1) - 1
  CHECK(best.value == 0);
  CHECK(*best.winner == Method::geometry);
}

TEST_CASE("method names round-trip") {
  for (Method m : kSingle) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("best") == Method::best);
  CHECK_THROWS_AS(parse_method("fourrier"), ArgumentError);
}

TEST_CASE("exhaustive geometry refuses large d") {
  CHECK_THROWS_AS(geometry_bound_exhaustive(zero_configuration(kExhaustiveGeometryLimit + 1)), ArgumentError);
}

TEST_CASE("property: geometry search equals exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    const auto cfg = random_config(rng, 5);
    const auto fast = geometry_bound(cfg);
    const auto slow = geometry_bound_exhaustive(cfg);
    CAPTURE(t);
    REQUIRE(fast.value == slow.value);
    CHECK(fast.certified);
    CHECK(evaluate_at_witness(cfg, fast) == fast.value);
  }
}

TEST_CASE("property: branch and bound equals meet in the middle") {
  std::mt19937_64 rng(99);
  BoundOptions bnb;
  bnb.geometry_limit = 0;
  for (int t = 0; t < 200; ++t) {
    const auto cfg = random_config(rng, 9);
    const auto a = geometry_bound(cfg);
    const auto b = geometry_bound(cfg, bnb);
    CAPTURE(t);
    REQUIRE(b.certified);
    CHECK(a.value == b.value);
    CHECK(evaluate_at_witness(cfg, b) == b.value);
  }
}

TEST_CASE("property: witnesses reproduce values and best is the minimum") {
  std::mt19937_64 rng(5);
  BoundOptions all;
  all.methods = kAllMethods;
  for (int t = 0; t < 300; ++t) {
    const auto cfg = random_config(rng, 6);
    const auto best = best_bound(cfg, all);
    for (Method m : kSingle) {
      const auto r = evaluate(m, cfg);
      CAPTURE(to_string(m));
      CHECK(evaluate_at_witness(cfg, r) == r.value);
      CHECK(best.value <= r.value);
    }
    CHECK(evaluate_at_witness(cfg, best) == best.value);
    CHECK(best.value <= trivial_bound(cfg).value);
  }
}

TEST_CASE("property: permuting the three vectors changes nothing") {
  std::mt19937_64 rng(17);
  const std::array<std::array<int, 3>, 6> orders{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int t = 0; t < 150; ++t) {
    const auto cfg = random_config(rng, 4);
    for (const auto& order : orders) {
      const auto p = cfg.permuted(order);
      for (Method m : kSingle) {
        CAPTURE(to_string(m));
        CHECK(evaluate(m, p).value == evaluate(m, cfg).value);
      }
      CHECK(best_bound(p).value == best_bound(cfg).value);
    }
  }
}

TEST_CASE("property: delta shifts with fixed coefficients") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto cfg = random_config(rng, 4);
    auto up = cfg;
    const Rational shift(static_cast<long>(1 + rng() % 50), 1000);
    up.delta += shift;
    CHECK(trivial_bound(up).value == trivial_bound(cfg).value);
    CHECK(fourier_bound(up).value == fourier_bound(cfg).value + shift / 2);
    CHECK(extended_fourier_bound(up).value == extended_fourier_bound(cfg).value + shift / 2);
    CHECK(geometry_bound(up).value == geometry_bound(cfg).value + shift);
    CHECK(determinant_bound(up).value == determinant_bound(cfg).value + shift);
    CHECK(thue_bound(up).value == thue_bound(cfg).value + shift);
  }
}

TEST_CASE("property: extended fourier is never weaker than fourier") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    const auto cfg = random_config(rng, 6);
    CHECK(extended_fourier_bound(cfg).value <= fourier_bound(cfg).value);
  }
}

TEST_CASE("evaluators validate input") {
  auto bad = zero_configuration(2);
  bad.a[0] = Rational(-1, 5);
  CHECK_THROWS_AS(best_bound(bad), ArgumentError);
  bad = zero_configuration(2);
  bad.c.pop_back();
  CHECK_THROWS_AS(fourier_bound(bad), ArgumentError);
}
