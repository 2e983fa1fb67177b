#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "abc/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
  nlohmann::json doc() const { return nlohmann::json::parse(out); }
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = abc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("rad") {
  const auto r = invoke({"rad", "96"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"schema\":\"abc-toolkit/1\",\"kind\":\"rad\",\"n\":96,\"radical\":6}\n");
}

TEST_CASE("count nlambda and documented values") {
  const auto r = invoke({"count", "nlambda", "--x", "9", "--lambda", "9/10"});
  CHECK(r.code == 0);
  CHECK(r.doc()["count"] == 2);
  CHECK(r.doc()["schema"] == "abc-toolkit/1");
  CHECK(invoke({"count", "debruijn", "--x", "100", "--lambda", "1/2"}).doc()["count"] == 30);
  CHECK(invoke({"count", "s", "--x", "5", "--alpha", "1", "--beta", "1", "--gamma", "1"}).doc()["count"] == 9);
  CHECK(invoke({"count", "ternary", "--p", "2", "--q", "2", "--r", "1", "--a1", "1", "--a2", "1", "--a3", "-1",
                "--x", "2", "--y", "2", "--z", "8"})
            .doc()["count"] == 12);
}

TEST_CASE("strategies agree through the CLI") {
  const auto a = invoke({"count", "nlambda", "--x", "80", "--lambda", "1", "--strategy", "by-a"});
  const auto c = invoke({"count", "nlambda", "--x", "80", "--lambda", "1", "--strategy", "by-c"});
  CHECK(a.doc()["count"] == c.doc()["count"]);
}

TEST_CASE("output is byte-identical for identical argv") {
  const std::vector<std::string> args{"verify", "region", "--d", "4", "--samples", "500", "--climbs", "1",
                                      "--climb-evaluations", "300", "--seed", "9"};
  const auto one = invoke(args);
  const auto two = invoke(args);
  CHECK(one.out == two.out);
  CHECK(one.out.find("elapsed_seconds") == std::string::npos);
  auto timed = args;
  timed.insert(timed.begin(), "--timing");
  CHECK(invoke(timed).out.find("elapsed_seconds") != std::string::npos);
}

TEST_CASE("malformed input gives exit 2 and an error object") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"count", "nlambda", "--x", "9", "--lambda", "0.9"},
           {"rad", "0"},
           {"rad", "abc"},
           {"frobnicate"},
           {"bounds", "eval", "--config", "/nonexistent/config.json"},
       }) {
    const auto r = invoke(args);
    CAPTURE(args.front());
    CHECK(r.code == 2);
    const auto doc = r.doc();
    CHECK(doc["kind"] == "error");
    CHECK(doc["schema"] == "abc-toolkit/1");
    CHECK(doc["error"].contains("type"));
    CHECK(doc["error"].contains("message"));
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("verdicts map to exit codes") {
  CHECK(invoke({"verify", "cases", "--delta", "1/1000"}).code == 0);
  const auto fail = invoke({"verify", "cases", "--delta", "1/10"});
  CHECK(fail.code == 1);
  CHECK(fail.doc()["all_passed"] == false);
  CHECK(invoke({"verify", "region", "--d", "2", "--samples", "100"}).code == 0);
  CHECK(invoke({"verify", "region", "--d", "4", "--samples", "300", "--climbs", "0", "--threshold", "0"}).code == 1);
  CHECK(invoke({"factorize", "--n", "720", "--x", "1000", "--epsilon", "1/2"}).code == 0);
  CHECK(invoke({"reduce-triple", "--a", "5", "--b", "27", "--c", "32", "--x", "32", "--epsilon", "1"}).code == 0);
}

TEST_CASE("csv only for flat tables") {
  const auto sieve = invoke({"--format", "csv", "sieve", "--limit", "5"});
  CHECK(sieve.code == 0);
  CHECK(sieve.out.find("n,radical") != std::string::npos);
  const auto count = invoke({"--format", "csv", "count", "debruijn", "--x", "100", "--lambda", "1/2"});
  CHECK(count.code == 0);
  CHECK(invoke({"--format", "csv", "verify", "cases"}).code == 2);
  CHECK(invoke({"--format", "table", "verify", "cases"}).code == 0);
}

TEST_CASE("bounds eval reads a configuration file") {
  const auto path = temp_file("abc_cli_bounds.json",
                              R"({"d":2,"a":["0","1/5"],"b":["0","1/10"],"c":["1","0"],"delta":"0","epsilon":"0"})");
  const auto r = invoke({"bounds", "eval", "--config", path.string(), "--method", "fourier"});
  CHECK(r.code == 0);
  const auto doc = r.doc();
  CHECK(doc["kind"] == "bounds");
  REQUIRE(doc["reports"].size() == 1);
  CHECK(doc["reports"][0]["value"] == "1/2");
  const auto all = invoke({"bounds", "eval", "--config", path.string(), "--method", "all"}).doc();
  CHECK(all["reports"].size() >= 5);
  const auto bad = temp_file("abc_cli_bad.json", R"({"d":2,"a":["0.1","0"],"b":["0","0"],"c":["0","0"]})");
  CHECK(invoke({"bounds", "eval", "--config", bad.string()}).code == 2);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST_CASE("count bd reads a box file and honours the budget") {
  const auto path = temp_file("abc_cli_box.json", R"({"d":1,"c":[1,1,1],"X":["1"],"Y":["2"],"Z":["4"]})");
  CHECK(invoke({"count", "bd", "--spec", path.string()}).doc()["count"] == 1);
  CHECK(invoke({"count", "bd", "--spec", path.string(), "--strategy", "nested"}).doc()["count"] == 1);
  const auto big = temp_file("abc_cli_big.json", R"({"d":1,"c":[1,1,1],"X":["100000"],"Y":["100000"],"Z":["100000"]})");
  const auto refused = invoke({"--budget", "1000", "count", "bd", "--spec", big.string(), "--strategy", "nested"});
  CHECK(refused.code == 2);
  CHECK(refused.doc()["error"]["type"] == "budget");
  CHECK(refused.doc()["error"]["budget"] == 1000);

  ::setenv(abc::cli::kBudgetVariable, "1000", 1);
  const auto env = invoke({"count", "bd", "--spec", big.string(), "--strategy", "nested"});
  CHECK(env.code == 2);
  CHECK(env.doc()["error"]["type"] == "budget");
  ::setenv(abc::cli::kBudgetVariable, "zero", 1);
  CHECK(invoke({"count", "debruijn", "--x", "10", "--lambda", "1/2"}).code == 2);
  ::unsetenv(abc::cli::kBudgetVariable);
  std::filesystem::remove(path);
  std::filesystem::remove(big);
}

TEST_CASE("help exits cleanly") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(invoke({"count", "nlambda", "--help"}).code == 0);
}
