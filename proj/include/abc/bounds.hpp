#pragma once

// Upper bounds for the exponent of B_d in X, evaluated exactly on an exponent
// configuration. Each evaluator minimizes over the admissible choices of vector
// pairs (or roles) and records the minimizing choice as a witness.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abc/exponents.hpp"

namespace abc {

enum class Method { trivial, fourier, geometry, determinant, thue, extended_fourier, best };

std::string to_string(Method m);
// Accepts the names produced by to_string; throws ArgumentError otherwise.
Method parse_method(const std::string& name);

// Bit set over the individual methods (not best).
using MethodMask = unsigned;
constexpr MethodMask method_bit(Method m) { return 1u << static_cast<unsigned>(m); }
inline constexpr MethodMask kStandardMethods = method_bit(Method::trivial) | method_bit(Method::fourier) |
                                               method_bit(Method::geometry) | method_bit(Method::determinant) |
                                               method_bit(Method::thue);
inline constexpr MethodMask kAllMethods = kStandardMethods | method_bit(Method::extended_fourier);

// Vector indices are 0, 1, 2 for a, b, c; positions are 1-based.
struct PairWitness {
  int u = 0, v = 1;
};
struct FourierWitness {
  int u = 0, v = 1;
  int m = 0;  // position of the subtracted maximum; 0 when d < 2
};
struct GeometryWitness {
  std::array<std::vector<int>, 3> subsets;  // I, I', I'' as sorted 1-based positions
};
struct DeterminantWitness {
  int u = 0, v = 1;
  int p = 1, q = 1;
};
struct ThueWitness {
  int u = 0, v = 1;
  int p = 0;  // 0 when d < 2
};
struct ExtendedFourierWitness {
  int y = 0, z = 1;
  int i = 0;  // modulus; 0 when d < 2
};

using Witness = std::variant<std::monostate, PairWitness, FourierWitness, GeometryWitness, DeterminantWitness,
                             ThueWitness, ExtendedFourierWitness>;

struct BoundReport {
  Method method = Method::trivial;
  Rational value;
  Witness witness;
  // For best: the method that attained the minimum, and every evaluated method.
  std::optional<Method> winner;
  std::vector<BoundReport> components;
  // False when the geometry search stopped before proving optimality. The
  // value is still attained by the witness, so it remains a valid bound.
  bool certified = true;
  std::vector<std::string> notes;
};

struct BoundOptions {
  MethodMask methods = kStandardMethods;
  // Geometry uses meet-in-the-middle for d <= this limit, branch-and-bound above.
  int geometry_limit = 12;
  std::uint64_t geometry_node_cap = 50'000'000;
};

BoundReport trivial_bound(const ExponentConfiguration& cfg);
BoundReport fourier_bound(const ExponentConfiguration& cfg);
BoundReport geometry_bound(const ExponentConfiguration& cfg, const BoundOptions& options = {});
BoundReport determinant_bound(const ExponentConfiguration& cfg);
BoundReport thue_bound(const ExponentConfiguration& cfg);
BoundReport extended_fourier_bound(const ExponentConfiguration& cfg);
BoundReport evaluate(Method method, const ExponentConfiguration& cfg, const BoundOptions& options = {});

// Minimum over options.methods. Ties go to the earlier method in the order
// trivial, fourier, geometry, determinant, thue, extended_fourier.
BoundReport best_bound(const ExponentConfiguration& cfg, const BoundOptions& options = {});

// Every one of the 2^{3d} subset triples, in exact rationals. Reference
// implementation for tests; refuses d > kExhaustiveGeometryLimit.
inline constexpr int kExhaustiveGeometryLimit = 6;
BoundReport geometry_bound_exhaustive(const ExponentConfiguration& cfg);

// Re-evaluates the method's formula at the report's witness, directly in
// rationals. For best, evaluates the winner's formula.
Rational evaluate_at_witness(const ExponentConfiguration& cfg, const BoundReport& report);

}  // namespace abc
