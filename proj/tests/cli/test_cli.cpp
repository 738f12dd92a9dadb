#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bvperiod_cli/cli.hpp"

using bvperiod::cli::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bvperiod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kCubic = {"--poly", "x0^3+x1^3+x2^3", "--n", "2", "--d", "3"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("basis") {
  const auto r = run(with({"basis"}, kCubic));
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["results"]["dims"] == json::array({1, 1}));
  CHECK(j["results"]["reps"] == json::array({"1", "y*x0*x1*x2"}));
  CHECK(j["tool"]["version"] == bvperiod::cli::kVersion);
  CHECK(j["config"]["n"] == 2);
  CHECK(j["timings"].empty());
  const auto q = run({"basis", "--poly", "x0^4+x1^4+x2^4", "--n", "2", "--d", "4"});
  CHECK(q.report()["results"]["dims"] == json::array({3, 3}));
}

TEST_CASE("reduce") {
  const auto r = run(with({"reduce", "--element", "y^2*x0^3*x1^3"}, kCubic));
  REQUIRE(r.code == 0);
  CHECK(r.report()["results"]["coefficients"] == json::array({"1/9", "0"}));
  const auto g = run({"reduce", "--vars", "x", "--poly", "-1/2*x^2", "--element", "x^8"});
  CHECK(g.report()["results"]["coefficients"] == json::array({"105"}));
}

TEST_CASE("connection report") {
  const auto r = run(with({"connection", "--order", "3"}, kCubic));
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["status"] == "pass");
  CHECK(j["results"]["ledger_hash"].get<std::string>().size() == 64);
  for (const auto& a : j["assertions"]) CHECK(a["ok"] == true);
  CHECK(j["results"]["gauss_manin"].contains("1"));
  const auto geo = run(with({"connection", "--order", "2", "--family", "-3*T*x0*x1*x2"}, kCubic));
  CHECK(geo.code == 0);
  CHECK(geo.report()["results"]["provenance"] == "geometric");
  CHECK(geo.report()["results"]["directions"] == json::array({1}));
}

TEST_CASE("byte-identical reports") {
  const auto a = run(with({"connection", "--order", "3"}, kCubic));
  const auto b = run(with({"connection", "--order", "3"}, kCubic));
  CHECK(a.out == b.out);
  const auto c = run({"check", "--suite", "bv", "--seed", "7"});
  const auto d = run({"check", "--suite", "bv", "--seed", "7"});
  CHECK(c.out == d.out);
  const auto t = run(with({"basis", "--timings"}, kCubic));
  CHECK(t.report()["timings"].contains("total_ms"));
}

TEST_CASE("frobenius") {
  const auto r = run(with({"frobenius", "--order", "3"}, kCubic));
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["results"]["metric"] == json::array({json::array({"0", "1/27"}), json::array({"1/27", "0"})}));
  CHECK(j["results"]["axioms"]["associativity"]["ok"] == true);
}

TEST_CASE("toy") {
  const auto r = run({"toy", "--potential", "-x^4", "--max-moment", "8"});
  REQUIRE(r.code == 0);
  const auto table = r.report()["results"]["table"];
  CHECK(table[4]["exact"] == json::array({"1/4", "0", "0"}));
  CHECK(table[6]["exact"] == json::array({"0", "0", "3/4"}));
  CHECK(table[8]["t_route"] == table[8]["exact"]);
  CHECK(std::abs(table[4]["ratio_to_m0"].get<double>() - 0.25) < 1e-8);
  const auto nq = run({"toy", "--potential", "x^4", "--max-moment", "4"});
  CHECK(nq.code == 0);
  CHECK(nq.report()["results"].contains("quadrature_note"));
}

TEST_CASE("check suites") {
  for (const char* s : {"bv", "linf", "oracle", "wdvv"}) {
    const auto r = run({"check", "--suite", s, "--seed", "7"});
    CHECK_MESSAGE(r.code == 0, s);
    CHECK(r.report()["status"] == "pass");
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"basis", "--n", "2", "--d", "3"}).code == 2);
  CHECK(run(with({"basis"}, {"--poly", "x0^3+x1^3+", "--n", "2", "--d", "3"})).code == 2);
  CHECK(run({"basis", "--poly", "x0^3+x1^3+x2^3", "--n", "2", "--d", "4"}).code == 2);
  CHECK(run({"basis", "--poly", "x0^3+x1^3+x2^3-3*x0*x1*x2", "--n", "2", "--d", "3"}).code == 2);
  CHECK(run(with({"connection", "--directions", "5"}, kCubic)).code == 2);
  CHECK(run(with({"connection", "--family", "T^2*x0^3"}, kCubic)).code == 2);
  CHECK(run({"check", "--suite", "nope"}).code == 2);
  CHECK(run({"frobenius", "--poly", "x0^4+x1^4+x2^4", "--n", "2", "--d", "4"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--version"}).code == 0);
}
