#include "abc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "abc/cases.hpp"
#include "abc/errors.hpp"
#include "abc/radical.hpp"
#include "abc/report_json.hpp"

namespace abc::cli {
namespace {

using u64 = std::uint64_t;

struct Output {
  Json doc;
  int code = kOk;
  // Flat rows for csv and table output; empty when the report is nested.
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Common {
  std::string format = "json";
  unsigned threads = 0;
  std::optional<u64> budget;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

u64 default_budget() {
  const char* env = std::getenv(kBudgetVariable);
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  const std::string text(env);
  if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 19) {
    throw UsageError(std::string(kBudgetVariable) + " must be a positive integer, got '" + text + "'");
  }
  const u64 v = std::stoull(text);
  if (v == 0) throw UsageError(std::string(kBudgetVariable) + " must be positive");
  return v;
}

CountOptions count_options(const Common& common) {
  CountOptions o;
  o.threads = common.threads;
  o.budget = common.budget ? *common.budget : default_budget();
  return o;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, out);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + scalar_text(x);
    out.emplace_back(path, s);
  } else {
    out.emplace_back(path, scalar_text(v));
  }
}

// Wall-clock fields differ between runs; they are kept only on request so
// that identical arguments give identical output.
void strip_timing(Json& v) {
  if (v.is_object()) {
    v.erase("elapsed_seconds");
    for (auto& [k, x] : v.items()) strip_timing(x);
  } else if (v.is_array()) {
    for (auto& x : v) strip_timing(x);
  }
}

void render(Output o, const std::string& format, bool timing, std::ostream& out) {
  if (!timing) {
    strip_timing(o.doc);
    const auto it = std::find(o.header.begin(), o.header.end(), "elapsed_seconds");
    if (it != o.header.end()) {
      const auto col = static_cast<std::size_t>(it - o.header.begin());
      o.header.erase(it);
      for (auto& r : o.rows) r.erase(r.begin() + static_cast<std::ptrdiff_t>(col));
    }
  }
  if (format == "json") {
    out << o.doc.dump() << '\n';
    return;
  }
  if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(o.header);
    for (const auto& r : o.rows) line(r);
    return;
  }
  // table
  if (!o.header.empty()) {
    std::vector<std::size_t> width(o.header.size());
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = o.header[i].size();
    for (const auto& r : o.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(width[i]) + 2) << cells[i];
      }
      out << '\n';
    };
    line(o.header);
    for (const auto& r : o.rows) line(r);
    return;
  }
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(o.doc, "", kv);
  std::size_t w = 0;
  for (const auto& [k, v] : kv) w = std::max(w, k.size());
  for (const auto& [k, v] : kv) out << std::left << std::setw(static_cast<int>(w) + 2) << k << v << '\n';
}

Output count_output(const CountResult& r) {
  Output o;
  o.doc = with_schema("count", to_json(r));
  o.header = {"function"};
  std::vector<std::string> row{r.function};
  for (const auto& [k, v] : r.parameters) {
    o.header.push_back(k);
    row.push_back(v);
  }
  for (const char* h : {"count", "strategy", "threads", "elapsed_seconds"}) o.header.push_back(h);
  row.push_back(std::to_string(r.count));
  row.push_back(r.strategy);
  row.push_back(std::to_string(r.threads));
  std::ostringstream t;
  t << r.elapsed_seconds;
  row.push_back(t.str());
  o.rows.push_back(std::move(row));
  return o;
}

template <class Enum>
Enum pick_strategy(const std::string& name, std::initializer_list<Enum> options) {
  std::string known;
  for (Enum e : options) {
    if (to_string(e) == name) return e;
    known += (known.empty() ? "" : ", ") + to_string(e);
  }
  throw UsageError("unknown strategy '" + name + "' (expected one of: " + known + ")");
}

MethodMask parse_methods(const std::string& list, bool extended) {
  MethodMask mask = 0;
  if (list == "all" || list == "best") {
    mask = kStandardMethods;
  } else {
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const Method m = parse_method(name);
      if (m == Method::best) throw UsageError("'best' cannot be combined with other methods");
      mask |= method_bit(m);
    }
  }
  if (extended) mask |= method_bit(Method::extended_fourier);
  if (mask == 0) throw UsageError("no bound method selected");
  return mask;
}

struct RegionArgs {
  int d = 6;
  std::string delta = "1/1000", epsilon = "1/1000", lambda = "1", threshold = "33/50";
  u64 samples = 100'000;
  u64 seed = 1;
  std::string methods = "all";
  bool extended = false;
  int climbs = RegionSearchOptions{}.climbs;
  u64 climb_evaluations = RegionSearchOptions{}.climb_evaluations;
};

void add_region_options(CLI::App* sub, RegionArgs& a) {
  sub->add_option("--d", a.d, "Number of exponent positions per vector")->capture_default_str();
  sub->add_option("--delta", a.delta, "Slack parameter delta as p/q")->capture_default_str();
  sub->add_option("--epsilon", a.epsilon, "Parameter epsilon as p/q")->capture_default_str();
  sub->add_option("--lambda", a.lambda, "Triple exponent lambda as p/q (recorded, informational)")
      ->capture_default_str();
  sub->add_option("--threshold", a.threshold, "Verdict threshold as p/q")->capture_default_str();
  sub->add_option("--samples", a.samples, "Random samples, split across sampler families")->capture_default_str();
  sub->add_option("--seed", a.seed, "Seed of every random stream")->capture_default_str();
  sub->add_option("--methods", a.methods, "Comma-separated bound methods, or 'all'")->capture_default_str();
  sub->add_flag("--extended-fourier", a.extended, "Add the extended Fourier bound to the method set");
  sub->add_option("--climbs", a.climbs, "Best samples refined by local search")->capture_default_str();
  sub->add_option("--climb-evaluations", a.climb_evaluations, "Evaluation budget per climb")->capture_default_str();
}

RegionSearchOptions region_options(const RegionArgs& a, const Common& common) {
  RegionSearchOptions o;
  o.d = a.d;
  o.delta = parse_rational(a.delta);
  o.epsilon = parse_rational(a.epsilon);
  o.lambda = parse_rational(a.lambda);
  o.threshold = parse_rational(a.threshold);
  o.budget = a.samples;
  o.seed = a.seed;
  o.threads = common.threads;
  o.methods = parse_methods(a.methods, a.extended);
  o.climbs = a.climbs;
  o.climb_evaluations = a.climb_evaluations;
  return o;
}

Json error_doc(const std::string& type, const std::string& message) {
  Json body;
  body["error"] = {{"type", type}, {"message", message}};
  return with_schema("error", body);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting, bound evaluation and region search tools for abc triples of a given exponent.",
               "abcx"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--budget", common.budget,
                 std::string("Enumeration budget in candidate evaluations (default from ") + kBudgetVariable +
                     ", else 10^9)");
  app.add_flag("--timing", common.timing, "Include wall-clock times in the output");

  std::function<Output()> action;
  bool csv_allowed = false;

  // rad
  u64 rad_n = 0;
  auto* rad = app.add_subcommand("rad", "Radical of n: the product of the distinct primes dividing n");
  rad->add_option("n", rad_n, "Positive integer")->required();
  rad->callback([&] {
    csv_allowed = true;
    action = [&] {
      if (rad_n == 0) throw ArgumentError("n must be >= 1");
      Output o;
      const u64 r = radical(rad_n);
      o.doc = with_schema("rad", Json{{"n", rad_n}, {"radical", r}});
      o.header = {"n", "radical"};
      o.rows = {{std::to_string(rad_n), std::to_string(r)}};
      return o;
    };
  });

  // sieve
  u64 sieve_limit = 0, sieve_from = 1;
  auto* sieve = app.add_subcommand("sieve", "Table of radicals for every n in a range, from a smallest-prime-factor sieve");
  sieve->add_option("--limit", sieve_limit, "Largest n")->required();
  sieve->add_option("--from", sieve_from, "Smallest n listed")->capture_default_str();
  sieve->callback([&] {
    csv_allowed = true;
    action = [&] {
      constexpr u64 kMaxRows = 1'000'000;
      if (sieve_from == 0 || sieve_from > sieve_limit) throw ArgumentError("need 1 <= from <= limit");
      if (sieve_limit - sieve_from >= kMaxRows) {
        throw ArgumentError("at most " + std::to_string(kMaxRows) + " rows per call; raise --from");
      }
      const RadicalTable table = build_radical_table(sieve_limit);
      Output o;
      Json rows = Json::array();
      o.header = {"n", "radical"};
      for (u64 n = sieve_from; n <= sieve_limit; ++n) {
        rows.push_back(Json{{"n", n}, {"radical", table[n]}});
        o.rows.push_back({std::to_string(n), std::to_string(table[n])});
      }
      o.doc = with_schema("sieve", Json{{"from", sieve_from}, {"limit", sieve_limit}, {"rows", rows}});
      return o;
    };
  });

  // factorize
  u64 fac_n = 0, fac_x = 0;
  std::string fac_eps;
  auto* fac = app.add_subcommand(
      "factorize", "Split n <= X into a coefficient c and prime-power-style parts n = c * prod_j n_j^j, with checks");
  fac->add_option("--n", fac_n, "Integer to factor")->required();
  fac->add_option("--x", fac_x, "Height bound X >= n")->required();
  fac->add_option("--epsilon", fac_eps, "Parameter epsilon as p/q")->required();
  fac->callback([&] {
    action = [&] {
      const auto pf = power_factorize(fac_n, fac_x, parse_rational(fac_eps));
      const auto checks = verify_power_factorization(pf);
      Output o;
      o.doc = with_schema("factorize", to_json(pf, checks));
      o.code = checks.pass ? kOk : kVerdictFail;
      return o;
    };
  });

  // reduce-triple
  u64 rt_a = 0, rt_b = 0, rt_c = 0, rt_x = 0;
  std::string rt_eps, rt_bound;
  auto* rt = app.add_subcommand("reduce-triple",
                                "Factor each member of a triple a + b = c and report the coefficient triple");
  rt->add_option("--a", rt_a)->required();
  rt->add_option("--b", rt_b)->required();
  rt->add_option("--c", rt_c)->required();
  rt->add_option("--x", rt_x, "Height bound X")->required();
  rt->add_option("--epsilon", rt_eps, "Parameter epsilon as p/q")->required();
  rt->add_option("--coefficient-bound", rt_bound, "Also check every coefficient is at most X^bound (p/q)");
  rt->callback([&] {
    action = [&] {
      const auto tr = reduce_triple(rt_a, rt_b, rt_c, rt_x, parse_rational(rt_eps));
      auto checks = verify_triple_reduction(tr);
      if (!rt_bound.empty()) checks.record("coefficients-within-bound", coefficients_within(tr, parse_rational(rt_bound)));
      Output o;
      o.doc = with_schema("reduce-triple", to_json(tr, checks));
      o.code = checks.pass ? kOk : kVerdictFail;
      return o;
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Exact enumeration counts");
  count->require_subcommand(1);

  u64 nl_x = 0;
  std::string nl_lambda, nl_strategy = "by-c";
  bool nl_unordered = false;
  auto* nl = count->add_subcommand(
      "nlambda", "Number of coprime a + b = c <= X with rad(abc) < c^lambda (ordered unless --unordered)");
  nl->add_option("--x", nl_x, "Height bound X")->required();
  nl->add_option("--lambda", nl_lambda, "Exponent lambda as p/q")->required();
  nl->add_flag("--unordered", nl_unordered, "Count unordered pairs {a, b}");
  nl->add_option("--strategy", nl_strategy, "by-c or by-a")->capture_default_str();
  nl->callback([&] {
    csv_allowed = true;
    action = [&] {
      const auto s = pick_strategy(nl_strategy, {PairStrategy::by_c, PairStrategy::by_a});
      return count_output(
          count_exceptional_triples(nl_x, parse_rational(nl_lambda), !nl_unordered, s, count_options(common)));
    };
  });

  u64 s_x = 0;
  std::string s_alpha, s_beta, s_gamma, s_strategy = "by-c";
  bool s_star = false;
  auto* cs = count->add_subcommand(
      "s", "Coprime a + b = c with radical conditions on a, b and c (dyadic radical windows with --star)");
  cs->add_option("--x", s_x, "Height bound X")->required();
  cs->add_option("--alpha", s_alpha, "Exponent for a as p/q")->required();
  cs->add_option("--beta", s_beta, "Exponent for b as p/q")->required();
  cs->add_option("--gamma", s_gamma, "Exponent for c as p/q")->required();
  cs->add_flag("--star", s_star, "c in [X/2, X] and rad in (X^e, 2 X^e]");
  cs->add_option("--strategy", s_strategy, "by-c or by-a")->capture_default_str();
  cs->callback([&] {
    csv_allowed = true;
    action = [&] {
      const auto s = pick_strategy(s_strategy, {PairStrategy::by_c, PairStrategy::by_a});
      return count_output(count_S(s_x, parse_rational(s_alpha), parse_rational(s_beta), parse_rational(s_gamma),
                                  s_star, s, count_options(common)));
    };
  });

  u64 db_x = 0;
  std::string db_lambda, db_strategy = "table-scan";
  auto* db = count->add_subcommand("debruijn", "Number of n <= x with rad(n) <= x^lambda");
  db->add_option("--x", db_x, "Range bound x")->required();
  db->add_option("--lambda", db_lambda, "Exponent lambda as p/q")->required();
  db->add_option("--strategy", db_strategy, "table-scan or radical-classes")->capture_default_str();
  db->callback([&] {
    csv_allowed = true;
    action = [&] {
      const auto s =
          pick_strategy(db_strategy, {RadicalCountStrategy::table_scan, RadicalCountStrategy::radical_classes});
      return count_output(count_radical_bounded(db_x, parse_rational(db_lambda), s, count_options(common)));
    };
  });

  std::string bd_spec, bd_strategy = "meet-in-middle";
  auto* bd = count->add_subcommand(
      "bd", "Solutions of c1 prod x_j^j + c2 prod y_j^j = c3 prod z_j^j in dyadic boxes, with the gcd condition");
  bd->add_option("--spec", bd_spec, "BoxSpec JSON file {d, c, X, Y, Z[, A]}")->required();
  bd->add_option("--strategy", bd_strategy, "meet-in-middle or nested")->capture_default_str();
  bd->callback([&] {
    csv_allowed = true;
    action = [&] {
      const auto s = pick_strategy(bd_strategy, {BoxStrategy::meet_in_middle, BoxStrategy::nested});
      return count_output(count_Bd(box_from_json(read_json_file(bd_spec)), s, count_options(common)));
    };
  });

  TernaryQuery tq;
  std::string tq_strategy = "solve-for-z";
  auto* tern = count->add_subcommand(
      "ternary", "Pairwise coprime non-zero (x, y, z) in a box with a1 x^p + a2 y^q + a3 z^r = 0");
  tern->add_option("--p", tq.p)->required();
  tern->add_option("--q", tq.q)->required();
  tern->add_option("--r", tq.r)->required();
  tern->add_option("--a1", tq.a1)->required();
  tern->add_option("--a2", tq.a2)->required();
  tern->add_option("--a3", tq.a3)->required();
  tern->add_option("--x", tq.X, "Bound on |x|")->required();
  tern->add_option("--y", tq.Y, "Bound on |y|")->required();
  tern->add_option("--z", tq.Z, "Bound on |z|")->required();
  tern->add_option("--strategy", tq_strategy, "solve-for-z or nested")->capture_default_str();
  tern->callback([&] {
    csv_allowed = true;
    action = [&] {
      const auto s = pick_strategy(tq_strategy, {TernaryStrategy::solve_for_z, TernaryStrategy::nested});
      return count_output(count_ternary(tq, s, count_options(common)));
    };
  });

  // bounds eval
  auto* bounds = app.add_subcommand("bounds", "Upper bounds for the counting exponent of a configuration");
  bounds->require_subcommand(1);
  std::string be_config, be_method = "all";
  bool be_extended = false;
  int be_geometry_limit = BoundOptions{}.geometry_limit;
  auto* be = bounds->add_subcommand(
      "eval", "Evaluate the trivial, Fourier, geometry, determinant and Thue bounds and their minimum");
  be->add_option("--config", be_config, "Configuration JSON file {d, a, b, c, delta, epsilon}")->required();
  be->add_option("--method", be_method,
                 "all, best, or one of trivial, fourier, geometry, determinant, thue, extended-fourier")
      ->capture_default_str();
  be->add_flag("--extended-fourier", be_extended, "Include the extended Fourier bound");
  be->add_option("--geometry-limit", be_geometry_limit, "Largest d for the meet-in-the-middle geometry search")
      ->capture_default_str();
  be->callback([&] {
    action = [&] {
      const auto cfg = configuration_from_json(read_json_file(be_config));
      BoundOptions bopt;
      bopt.geometry_limit = be_geometry_limit;
      Json reports = Json::array();
      if (be_method == "all" || be_method == "best") {
        bopt.methods = parse_methods("all", be_extended);
        if (be_method == "all") {
          for (int k = 0; k < 6; ++k) {
            if (bopt.methods >> k & 1) reports.push_back(to_json(evaluate(static_cast<Method>(k), cfg, bopt)));
          }
        }
        reports.push_back(to_json(best_bound(cfg, bopt)));
      } else {
        reports.push_back(to_json(evaluate(parse_method(be_method), cfg, bopt)));
        if (be_extended) reports.push_back(to_json(evaluate(Method::extended_fourier, cfg, bopt)));
      }
      Output o;
      o.doc = with_schema("bounds", Json{{"configuration", to_json(cfg)}, {"reports", reports}});
      return o;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verification runs with a pass/fail verdict");
  verify->require_subcommand(1);
  RegionArgs vr;
  auto* vreg = verify->add_subcommand(
      "region", "Falsification search: largest minimum bound found on the feasible region versus a threshold");
  add_region_options(vreg, vr);
  vreg->callback([&] {
    action = [&] {
      const auto rep = maximize_nu(region_options(vr, common));
      Output o;
      o.doc = with_schema("region-search", to_json(rep));
      o.code = rep.verdict_pass ? kOk : kVerdictFail;
      return o;
    };
  });
  std::string vc_delta = "1/1000", vc_eps = "0";
  auto* vcases = verify->add_subcommand(
      "cases", "Exact replay of the constants in the case analysis (epsilon 0 means infinitesimal)");
  vcases->add_option("--delta", vc_delta, "Slack parameter delta as p/q")->capture_default_str();
  vcases->add_option("--epsilon", vc_eps, "Parameter epsilon as p/q")->capture_default_str();
  vcases->callback([&] {
    action = [&] {
      const auto rep = verify_case_catalog(parse_rational(vc_delta), parse_rational(vc_eps));
      Output o;
      o.doc = with_schema("case-catalog", to_json(rep));
      o.code = rep.all_passed ? kOk : kVerdictFail;
      return o;
    };
  });

  // explore theta
  auto* explore = app.add_subcommand("explore", "Exploratory searches");
  explore->require_subcommand(1);
  RegionArgs et;
  int et_steps = 40;
  auto* theta = explore->add_subcommand(
      "theta", "Smallest threshold the region search cannot falsify (empirical, not certified)");
  add_region_options(theta, et);
  theta->add_option("--steps", et_steps, "Bisection steps")->capture_default_str();
  theta->callback([&] {
    action = [&] {
      const auto rep = explore_theta(region_options(et, common), et_steps);
      Output o;
      o.doc = with_schema("theta", to_json(rep));
      return o;
    };
  });

  std::vector<std::string> argv_store{"abcx"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    out << error_doc("usage", e.what()).dump() << '\n';
    return kUsageError;
  }

  try {
    if (!action) throw UsageError("no command given");
    if (common.format == "csv" && !csv_allowed) throw UsageError("csv output is only offered for flat count tables");
    const Output o = action();
    render(o, common.format, common.timing, out);
    return o.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    out << error_doc("usage", e.what()).dump() << '\n';
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << '\n';
    out << error_doc("argument", e.what()).dump() << '\n';
  } catch (const BudgetExceeded& e) {
    err << "budget refusal: " << e.what() << '\n';
    Json doc = error_doc("budget", e.what());
    doc["error"]["estimate"] = static_cast<double>(e.estimate());
    doc["error"]["budget"] = e.budget();
    out << doc.dump() << '\n';
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    out << error_doc("resource", e.what()).dump() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    out << error_doc("internal", e.what()).dump() << '\n';
  }
  return kUsageError;
}

}  // namespace abc::cli
