#include "abc/report_json.hpp"

#include "abc/errors.hpp"

namespace abc {
namespace {

Json rationals(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json checks_json(const CheckResult& checks) {
  Json out = Json::object();
  for (const auto& c : checks.checks) out[c.name] = c.pass;
  return out;
}

Json witness_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> Json {
        using W = std::decay_t<decltype(x)>;
        const std::string names = "abc";
        Json j = Json::object();
        if constexpr (std::is_same_v<W, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<W, PairWitness>) {
          j["pair"] = std::string{names[x.u], names[x.v]};
        } else if constexpr (std::is_same_v<W, FourierWitness>) {
          j["pair"] = std::string{names[x.u], names[x.v]};
          j["dropped_index"] = x.m;
        } else if constexpr (std::is_same_v<W, GeometryWitness>) {
          for (int k = 0; k < 3; ++k) j[std::string(1, names[k])] = x.subsets[k];
        } else if constexpr (std::is_same_v<W, DeterminantWitness>) {
          j["pair"] = std::string{names[x.u], names[x.v]};
          j["p"] = x.p;
          j["q"] = x.q;
        } else if constexpr (std::is_same_v<W, ThueWitness>) {
          j["pair"] = std::string{names[x.u], names[x.v]};
          j["modulus"] = x.p;
        } else {
          j["pair"] = std::string{names[x.y], names[x.z]};
          j["modulus"] = x.i;
        }
        return j;
      },
      w);
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::vector<Rational> rational_array(const Json& value, const char* key) {
  if (!value.is_array()) throw ArgumentError(std::string("field '") + key + "' must be an array");
  std::vector<Rational> out;
  for (const auto& v : value) out.push_back(rational_from_json(v));
  return out;
}

int int_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_integer()) throw ArgumentError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Json with_schema(const std::string& kind, const Json& body) {
  Json out;
  out["schema"] = kSchema;
  out["kind"] = kind;
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const CountResult& r) {
  Json j;
  j["function"] = r.function;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["count"] = r.count;
  j["strategy"] = r.strategy;
  j["threads"] = r.threads;
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const PowerFactorization& pf, const CheckResult& checks) {
  Json j;
  j["n"] = pf.n;
  j["X"] = pf.X;
  j["epsilon"] = to_string(pf.epsilon);
  j["K"] = pf.K;
  j["M"] = pf.M;
  j["c"] = pf.c;
  Json parts = Json::array();
  for (std::size_t i = 0; i < pf.parts.size(); ++i) {
    if (pf.parts[i] != 1) parts.push_back(Json{{"index", i + 1}, {"value", pf.parts[i]}});
  }
  j["parts"] = parts;
  j["checks"] = checks_json(checks);
  j["pass"] = checks.pass;
  return j;
}

Json to_json(const TripleReduction& tr, const CheckResult& checks) {
  Json j;
  j["a"] = tr.a;
  j["b"] = tr.b;
  j["c"] = tr.c;
  j["X"] = tr.X;
  j["epsilon"] = to_string(tr.epsilon);
  j["inner_epsilon"] = to_string(tr.inner_epsilon);
  j["coefficients"] = {tr.c1(), tr.c2(), tr.c3()};
  const CheckResult none;
  j["factorizations"] = {{"a", to_json(tr.fa, none)}, {"b", to_json(tr.fb, none)}, {"c", to_json(tr.fc, none)}};
  for (auto& [k, v] : j["factorizations"].items()) {
    v.erase("checks");
    v.erase("pass");
  }
  j["checks"] = checks_json(checks);
  j["pass"] = checks.pass;
  return j;
}

Json to_json(const ExponentConfiguration& cfg) {
  Json j;
  j["d"] = cfg.d;
  j["a"] = rationals(cfg.a);
  j["b"] = rationals(cfg.b);
  j["c"] = rationals(cfg.c);
  j["delta"] = to_string(cfg.delta);
  j["epsilon"] = to_string(cfg.epsilon);
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["value"] = to_string(r.value);
  j["value_decimal"] = to_decimal(r.value, 9);
  if (r.winner) j["winner"] = to_string(*r.winner);
  j["witness"] = witness_json(r.witness);
  j["certified"] = r.certified;
  if (!r.components.empty()) {
    Json comps = Json::array();
    for (const auto& c : r.components) comps.push_back(to_json(c));
    j["components"] = comps;
  }
  j["notes"] = r.notes;
  return j;
}

Json to_json(const ConstraintReport& rep) {
  Json j;
  j["feasible"] = rep.feasible;
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    recs.push_back(Json{{"name", r.name},
                        {"satisfied", r.satisfied},
                        {"slack", to_string(r.slack)},
                        {"strict", r.strict},
                        {"informational", r.informational}});
  }
  j["records"] = recs;
  return j;
}

Json to_json(const RegionSearchReport& r) {
  Json j;
  j["outcome"] = r.outcome;
  j["verdict_pass"] = r.verdict_pass;
  const auto& o = r.options;
  Json methods = Json::array();
  for (int k = 0; k < 6; ++k) {
    if (o.methods >> k & 1) methods.push_back(to_string(static_cast<Method>(k)));
  }
  j["options"] = {{"d", o.d},
                  {"delta", to_string(o.delta)},
                  {"epsilon", to_string(o.epsilon)},
                  {"lambda", to_string(o.lambda)},
                  {"threshold", to_string(o.threshold)},
                  {"budget", o.budget},
                  {"seed", o.seed},
                  {"methods", methods},
                  {"climbs", o.climbs},
                  {"climb_evaluations", o.climb_evaluations}};
  j["workers"] = r.workers;
  j["samples_attempted"] = r.samples_attempted;
  j["feasible_samples"] = r.feasible_samples;
  j["evaluations"] = r.evaluations;
  j["region_empty"] = r.region_empty;
  j["max_value"] = r.max_value ? Json(to_string(*r.max_value)) : Json(nullptr);
  j["max_value_decimal"] = r.max_value ? Json(to_decimal(*r.max_value, 9)) : Json(nullptr);
  j["argmax_family"] = r.argmax_family;
  j["argmax"] = r.argmax ? to_json(*r.argmax) : Json(nullptr);
  j["argmax_report"] = r.argmax_report ? to_json(*r.argmax_report) : Json(nullptr);
  Json fams = Json::array();
  for (const auto& f : r.families) {
    fams.push_back(Json{{"family", to_string(f.family)},
                        {"attempted", f.attempted},
                        {"feasible", f.feasible},
                        {"max_value", f.max_value ? Json(to_string(*f.max_value)) : Json(nullptr)}});
  }
  j["families"] = fams;
  Json wins = Json::object();
  for (int k = 0; k < 6; ++k) wins[to_string(static_cast<Method>(k))] = r.wins[k];
  j["wins"] = wins;
  j["notes"] = r.notes;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

Json to_json(const ThetaReport& r) {
  Json j;
  j["theta"] = r.theta ? Json(to_string(*r.theta)) : Json(nullptr);
  j["theta_decimal"] = r.theta ? Json(to_decimal(*r.theta, 9)) : Json(nullptr);
  j["certified"] = r.certified;
  Json steps = Json::array();
  for (const auto& s : r.bisection) steps.push_back(Json{{"lo", to_string(s.lo)}, {"hi", to_string(s.hi)}});
  j["bisection"] = steps;
  j["search"] = to_json(r.search);
  return j;
}

Json to_json(const CaseCheckReport& r) {
  Json j;
  j["delta"] = to_string(r.delta);
  j["epsilon"] = r.epsilon_infinitesimal ? Json("infinitesimal") : Json(to_string(r.epsilon));
  j["all_passed"] = r.all_passed;
  Json poly = Json::array();
  for (const auto& [s1, s2] : r.polygon) poly.push_back(Json{to_string(s1), to_string(s2)});
  j["polygon"] = poly;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json steps = Json::array();
    for (const auto& s : c.steps) {
      Json st;
      st["label"] = s.label;
      st["relation"] = to_string(s.relation);
      st["lhs"] = to_string(s.lhs);
      st["rhs"] = to_string(s.rhs);
      st["slack"] = to_string(s.slack);
      st["holds"] = s.holds;
      st["zero_slack"] = s.tight;
      st["required"] = s.required;
      if (!s.note.empty()) st["note"] = s.note;
      steps.push_back(st);
    }
    checks.push_back(Json{{"index", c.index}, {"name", c.name}, {"passed", c.passed}, {"steps", steps}});
  }
  j["checks"] = checks;
  return j;
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw ArgumentError("expected a rational as \"p/q\" string or integer, got " + value.dump());
}

ExponentConfiguration configuration_from_json(const Json& doc) {
  ExponentConfiguration cfg;
  cfg.d = int_field(doc, "d");
  cfg.a = rational_array(field(doc, "a"), "a");
  cfg.b = rational_array(field(doc, "b"), "b");
  cfg.c = rational_array(field(doc, "c"), "c");
  cfg.delta = rational_from_json(field(doc, "delta"));
  cfg.epsilon = doc.contains("epsilon") ? rational_from_json(doc.at("epsilon")) : Rational(0);
  validate(cfg);
  return cfg;
}

BoxSpec box_from_json(const Json& doc) {
  BoxSpec spec;
  spec.d = int_field(doc, "d");
  const Json& c = field(doc, "c");
  if (!c.is_array() || c.size() != 3) throw ArgumentError("field 'c' must hold three integers");
  for (int k = 0; k < 3; ++k) {
    if (!c[k].is_number_integer()) throw ArgumentError("field 'c' must hold three integers");
    spec.coefficients[k] = c[k].get<std::int64_t>();
  }
  spec.X = rational_array(field(doc, "X"), "X");
  spec.Y = rational_array(field(doc, "Y"), "Y");
  spec.Z = rational_array(field(doc, "Z"), "Z");
  if (doc.contains("A")) spec.A = rational_from_json(doc.at("A"));
  validate(spec);
  return spec;
}

}  // namespace abc
