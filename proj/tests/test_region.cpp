#include <doctest.h>

#include "abc/errors.hpp"
#include "abc/region.hpp"

using namespace abc;

namespace {

RegionSearchOptions quick(int d) {
  RegionSearchOptions o;
  o.d = d;
  o.budget = 3000;
  o.climbs = 2;
  o.climb_evaluations = 1500;
  o.threads = 1;
  o.seed = 42;
  return o;
}

bool on_grid(const ExponentConfiguration& cfg) {
  for (int k = 0; k < 3; ++k) {
    for (const auto& v : cfg.vec(k)) {
      if (kGridUnits % boost::multiprecision::denominator(v) != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("constraint records") {
  ExponentConfiguration cfg = zero_configuration(1);
  cfg.c = {decimal("0.9")};
  cfg.epsilon = decimal("0.1");
  const auto r = check_constraints(cfg, Rational(1));
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.at("C1.c.lower").satisfied);
  CHECK(r.at("C1.c.lower").slack == decimal("-0.09"));
  CHECK(r.at("C1.a").satisfied);
  CHECK_THROWS_AS(r.at("C9"), ArgumentError);
  for (const auto& rec : r.records) {
    CAPTURE(rec.name);
    CHECK(rec.satisfied == (rec.strict ? rec.slack > 0 : rec.slack >= 0));
  }
}

TEST_CASE("samples are feasible, on the grid and reproducible") {
  const Rational delta(1, 1000), eps(1, 1000);
  for (SampleFamily f : kSampleFamilies) {
    CAPTURE(to_string(f));
    const auto one = sample_feasible(5, delta, eps, 40, 7, f);
    const auto two = sample_feasible(5, delta, eps, 40, 7, f);
    REQUIRE(one.configs.size() == two.configs.size());
    CHECK(!one.configs.empty());
    for (std::size_t i = 0; i < one.configs.size(); ++i) {
      const auto& cfg = one.configs[i];
      CHECK(cfg.a == two.configs[i].a);
      CHECK(cfg.b == two.configs[i].b);
      CHECK(cfg.c == two.configs[i].c);
      CHECK(check_constraints(cfg, Rational(1)).feasible);
      CHECK(on_grid(cfg));
    }
  }
  const auto other = sample_feasible(5, delta, eps, 40, 8);
  const auto base = sample_feasible(5, delta, eps, 40, 7);
  CHECK(other.configs.front().a != base.configs.front().a);
  CHECK_THROWS_AS(sample_feasible(2, delta, eps, 10, 1), ArgumentError);
  CHECK_THROWS_AS(sample_feasible(4, delta, eps, 0, 1), ArgumentError);
}

TEST_CASE("triangle vertices are exact") {
  const auto v = triangle_vertices();
  CHECK(v[0] == std::pair<Rational, Rational>{decimal("0.06125"), decimal("0.155")});
  CHECK(v[1] == std::pair<Rational, Rational>{decimal("0.0785"), decimal("0.132")});
  CHECK(v[2] == std::pair<Rational, Rational>{Rational(17, 240), Rational(7, 60)});
}

TEST_CASE("corner configurations hit their exact targets") {
  const Rational delta(1, 1000), eps(1, 1000);
  const auto v = triangle_vertices();
  const SampleFamily vertex[] = {SampleFamily::vertex_t1, SampleFamily::vertex_t2, SampleFamily::vertex_t3};
  for (int k = 0; k < 3; ++k) {
    const auto cfg = corner_configuration(6, delta, eps, vertex[k], 3);
    REQUIRE(cfg.has_value());
    CHECK(check_constraints(*cfg, Rational(1)).feasible);
    CHECK(cfg->s(1) == v[k].first);
    CHECK(cfg->s(2) == v[k].second);
  }
  const auto s12 = corner_configuration(6, delta, eps, SampleFamily::s12_boundary, 3);
  REQUIRE(s12.has_value());
  CHECK(s12->s(1) + s12->s(2) == decimal("0.34") + delta);
  CHECK(check_constraints(*s12, Rational(1)).feasible);
  const auto a3 = corner_configuration(6, delta, eps, SampleFamily::a3_heavy, 3);
  REQUIRE(a3.has_value());
  CHECK(a3->a[2] == decimal("0.32"));
  CHECK(check_constraints(*a3, Rational(1)).feasible);
}

TEST_CASE("d = 1 and d = 2 give an empty region") {
  for (int d : {1, 2}) {
    const auto r = maximize_nu(quick(d));
    CHECK(r.region_empty);
    CHECK(r.outcome == "region-empty");
    CHECK(r.verdict_pass);
    CHECK_FALSE(r.max_value.has_value());
  }
}

TEST_CASE("threshold 0 fails at once") {
  auto o = quick(4);
  o.threshold = 0;
  const auto r = maximize_nu(o);
  CHECK_FALSE(r.verdict_pass);
  CHECK(r.outcome == "fail");
  REQUIRE(r.max_value.has_value());
  CHECK(*r.max_value > 0);
}

TEST_CASE("search report is consistent and reproducible") {
  const auto o = quick(5);
  const auto r = maximize_nu(o);
  REQUIRE(r.max_value.has_value());
  REQUIRE(r.argmax.has_value());
  CHECK(best_bound(*r.argmax).value == *r.max_value);
  CHECK(r.argmax_report->value == *r.max_value);
  CHECK(check_constraints(*r.argmax, o.lambda).feasible);
  CHECK(r.verdict_pass == (*r.max_value <= o.threshold));
  std::uint64_t feasible = 0;
  for (const auto& f : r.families) {
    feasible += f.feasible;
    if (f.max_value) CHECK(*f.max_value <= *r.max_value);
  }
  CHECK(feasible == r.feasible_samples);

  auto threaded = o;
  threaded.threads = 3;
  const auto again = maximize_nu(threaded);
  CHECK(*again.max_value == *r.max_value);
  CHECK(again.argmax->a == r.argmax->a);
  CHECK(again.argmax->b == r.argmax->b);
  CHECK(again.argmax->c == r.argmax->c);
}

TEST_CASE("trivial-only search sits at or above the pair floor") {
  auto o = quick(4);
  o.methods = method_bit(Method::trivial);
  const auto r = maximize_nu(o);
  REQUIRE(r.max_value.has_value());
  CHECK(*r.max_value >= decimal("0.66") - o.epsilon * o.epsilon);
}

TEST_CASE("adding the extended fourier bound never raises a sampled value") {
  BoundOptions all;
  all.methods = kAllMethods;
  const auto batch = sample_feasible(5, Rational(1, 1000), Rational(1, 1000), 200, 4);
  Rational standard_max = 0, extended_max = 0;
  for (const auto& cfg : batch.configs) {
    const auto s = best_bound(cfg).value;
    const auto e = best_bound(cfg, all).value;
    CHECK(e <= s);
    standard_max = std::max(standard_max, s);
    extended_max = std::max(extended_max, e);
  }
  CHECK(extended_max <= standard_max);
}

TEST_CASE("theta exploration reports the empirical sup") {
  const auto t = explore_theta(quick(4), 10);
  REQUIRE(t.theta.has_value());
  CHECK(*t.theta == *t.search.max_value);
  CHECK_FALSE(t.certified);
  CHECK(t.bisection.size() <= 10);
}
