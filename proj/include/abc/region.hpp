#pragma once

// Feasible exponent region, a seeded sampler over it, and a falsification
// search for the largest best_bound value on the region.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abc/bounds.hpp"
#include "abc/exponents.hpp"

namespace abc {

struct ConstraintRecord {
  std::string name;
  bool satisfied = false;
  // Distance to the boundary, positive inside. Strict constraints need
  // slack > 0, the others slack >= 0.
  Rational slack;
  bool strict = false;
  // Informational records do not enter the feasibility verdict.
  bool informational = false;
};

struct ConstraintReport {
  std::vector<ConstraintRecord> records;
  bool feasible = false;  // every C* record satisfied

  const ConstraintRecord& at(const std::string& name) const;
};

// C1: weighted sums  sum i a_i <= 1, sum i b_i <= 1, 1 - eps^2 <= sum i c_i <= 1
// C2: pairwise totals >= 0.66 - eps^2
// C3: grand total <= 1 + delta - eps
// C4: 0.32 - delta <= each total <= 0.34 + delta - eps/2
// R1-R3: the derived ranges for delta_a.., delta_ab.., delta_s (informational)
// lambda: lambda < 1 + delta - eps (informational)
ConstraintReport check_constraints(const ExponentConfiguration& cfg, const Rational& lambda);

// Sampler families. uniform draws totals inside the C4 box; the others pin
// part of the configuration to a boundary structure of the case analysis.
enum class SampleFamily { uniform, s12_boundary, a3_heavy, vertex_t1, vertex_t2, vertex_t3 };
inline constexpr std::array<SampleFamily, 6> kSampleFamilies{SampleFamily::uniform,   SampleFamily::s12_boundary,
                                                              SampleFamily::a3_heavy,  SampleFamily::vertex_t1,
                                                              SampleFamily::vertex_t2, SampleFamily::vertex_t3};
std::string to_string(SampleFamily f);

// Vertices of the triangle in the (s1, s2) plane bounded by 4 s1 + 3 s2 = 0.71,
// 4 s1 + s2 = 0.4 and 2 s1 - s2 = 0.025.
std::array<std::pair<Rational, Rational>, 3> triangle_vertices();

struct SampleBatch {
  std::vector<ExponentConfiguration> configs;
  std::uint64_t attempts = 0;
  std::vector<std::string> warnings;
};

// Deterministic in (d, delta, epsilon, count, seed, family). Every returned
// configuration satisfies check_constraints. Entries are multiples of
// 1 / kGridUnits. Throws ArgumentError for d < 3 or count = 0.
inline constexpr std::int64_t kGridUnits = 720'000'000;
SampleBatch sample_feasible(int d, const Rational& delta, const Rational& epsilon, std::uint64_t count,
                            std::uint64_t seed, SampleFamily family = SampleFamily::uniform);

// One configuration from a family with exact targets: vertex families put
// (s1, s2) exactly on the triangle vertex, s12_boundary puts s1 + s2 exactly
// on 0.34 + delta, a3_heavy puts a3 exactly on 0.32. Returns nullopt when no
// attempt succeeded within max_attempts.
std::optional<ExponentConfiguration> corner_configuration(int d, const Rational& delta, const Rational& epsilon,
                                                          SampleFamily family, std::uint64_t seed,
                                                          std::uint64_t max_attempts = 10'000);

struct RegionSearchOptions {
  int d = 6;
  Rational delta{1, 1000};
  Rational epsilon{1, 1000};
  Rational lambda{1};
  Rational threshold{33, 50};
  std::uint64_t budget = 100'000;  // random samples, split across families
  std::uint64_t seed = 1;
  unsigned threads = 0;
  MethodMask methods = kStandardMethods;
  int climbs = 64;                          // best samples refined by local search
  std::uint64_t climb_evaluations = 100'000;  // per climb and refinement round
};

struct FamilyStats {
  SampleFamily family = SampleFamily::uniform;
  std::uint64_t attempted = 0;
  std::uint64_t feasible = 0;
  std::optional<Rational> max_value;  // over samples and climbs seeded by this family
};

struct RegionSearchReport {
  RegionSearchOptions options;
  unsigned workers = 1;
  std::uint64_t samples_attempted = 0;
  std::uint64_t feasible_samples = 0;
  std::uint64_t evaluations = 0;
  bool region_empty = false;
  std::optional<Rational> max_value;
  std::optional<ExponentConfiguration> argmax;
  std::optional<BoundReport> argmax_report;
  std::string argmax_family;
  std::vector<FamilyStats> families;
  // How often each method attained the minimum on the feasible samples,
  // indexed by Method.
  std::array<std::uint64_t, 6> wins{};
  bool verdict_pass = true;
  std::string outcome;  // "pass", "fail" or "region-empty"
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;
};

// Sampling plus hill-climbing and LP refinement maximizing best_bound over the feasible region.
// A falsification search: a pass means no sample beat the threshold, not a
// proof. Deterministic for fixed options; the worker count does not change
// the result and is recorded.
RegionSearchReport maximize_nu(const RegionSearchOptions& options);

struct ThetaStep {
  Rational lo, hi;
};

struct ThetaReport {
  RegionSearchReport search;
  // Smallest threshold the search cannot falsify, i.e. the empirical sup.
  std::optional<Rational> theta;
  std::vector<ThetaStep> bisection;
  bool certified = false;
};

ThetaReport explore_theta(const RegionSearchOptions& options, int bisection_steps = 40);

}  // namespace abc
