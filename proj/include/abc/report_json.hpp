#pragma once

// JSON rendering of every report and parsing of the JSON input files. Keys are
// emitted in a fixed order so identical inputs give byte-identical documents.
// Rationals are written as "p/q" strings.

#include <json.hpp>

#include "abc/bounds.hpp"
#include "abc/cases.hpp"
#include "abc/counting.hpp"
#include "abc/exponents.hpp"
#include "abc/power_factorization.hpp"
#include "abc/region.hpp"

namespace abc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "abc-toolkit/1";

// Wraps a body with the leading "schema" key.
Json with_schema(const std::string& kind, const Json& body);

Json to_json(const Rational& value);
Json to_json(const CountResult& result);
Json to_json(const PowerFactorization& pf, const CheckResult& checks);
Json to_json(const TripleReduction& tr, const CheckResult& checks);
Json to_json(const ExponentConfiguration& cfg);
Json to_json(const BoundReport& report);
Json to_json(const ConstraintReport& report);
Json to_json(const RegionSearchReport& report);
Json to_json(const ThetaReport& report);
Json to_json(const CaseCheckReport& report);

// Input files. Rationals may be "p/q" strings or JSON integers. Throw
// ArgumentError on malformed documents.
Rational rational_from_json(const Json& value);
ExponentConfiguration configuration_from_json(const Json& doc);
BoxSpec box_from_json(const Json& doc);

}  // namespace abc
