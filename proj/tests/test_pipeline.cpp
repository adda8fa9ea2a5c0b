#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "polya_pila/pipeline.hpp"

using namespace polya_pila;

namespace {

PlaneCurve C(const char* s) { return curve_new(parse_bipoly(s)); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

PipelineConfig at(long H) {
  PipelineConfig c;
  c.H = H;
  return c;
}

}  // namespace

TEST_CASE("choose_parameters") {
  auto a = choose_parameters(20, 5);
  CHECK(a.k == 3);
  CHECK(a.r == 10);
  CHECK(a.regime == Regime::Certified);
  CHECK(choose_parameters(1000000, 3).k == 14);
  CHECK(choose_parameters(1000000, 3).regime == Regime::BruteFallback);
  auto c = choose_parameters(2, 4);
  CHECK(c.k == 2);
  CHECK(c.r == 6);
  CHECK(c.regime == Regime::Certified);
  // ceil(ln H) steps exactly where e^n is crossed
  CHECK(choose_parameters(1096, 9).k == 7);
  CHECK(choose_parameters(1097, 9).k == 8);
  CHECK_THROWS_AS(choose_parameters(1, 3), PreconditionError);
}

TEST_CASE("bound_value enclosures") {
  auto a = bound_value(2, 4, BigRational(1), 0);
  CHECK(a.lo == 16);
  CHECK(a.hi == 16);
  auto b = bound_value(2, 4, BigRational(1), 2);
  CHECK(b.lo >= 30.7);
  CHECK(b.hi <= 30.8);
  CHECK(b.lo <= b.hi);
  const double ln4 = std::log(4.0);
  CHECK(b.lo <= 16 * ln4 * ln4);
  CHECK(b.hi >= 16 * ln4 * ln4);
  auto c = bound_value(4, 16, BigRational(1), 0);
  CHECK(c.lo == 64);
  CHECK(c.hi == 64);
  auto neg = bound_value(3, 10, BigRational(-1, 2), 1);
  CHECK(neg.lo <= neg.hi);
  CHECK(neg.hi < 0);
}

TEST_CASE("pipeline totals on named curves") {
  auto circle = run_pipeline(C("x^2 + y^2 - 1"), at(5));
  CHECK(circle.total == 12);
  CHECK(circle.brute_total == 12);
  CHECK(circle.regime == Regime::BruteFallback);
  CHECK(run_pipeline(C("y - x^2"), at(4)).total == 7);
  CHECK(run_pipeline(C("x^2 + y^2 - 1"), at(2)).total == 4);
}

TEST_CASE("certified pipeline on a cubic and a quintic") {
  DecompositionCache cache;
  for (long H : {2L, 5L}) {
    auto rep = run_pipeline(C("x^3 + y^3 - 1"), at(H), &cache);
    CHECK(rep.regime == Regime::Certified);
    CHECK(rep.total == oracle::count_by_pairs(parse_bipoly("x^3 + y^3 - 1"), H));
    CHECK(rep.images.size() == 16);
    CHECK(rep.images[0].status == "certified");
  }
  PipelineConfig cfg = at(20);
  cfg.k_override = 2;
  cfg.r_override = 6;
  auto rep = run_pipeline(C("x^5 + y^5 - 1"), cfg);
  CHECK(rep.total == oracle::count_by_pairs(parse_bipoly("x^5 + y^5 - 1"), 20));
  CHECK(rep.images[0].status == "certified");
  CHECK(rep.images[0].max_arc_intersections < mu(2));
  CHECK(!rep.per_arc.empty());
  auto j = to_json(rep);
  CHECK(j["counts"]["total"] == rep.total);
  CHECK(j["regime"] == "certified");
}

TEST_CASE("pipeline modes and guardrails") {
  PipelineConfig cfg = at(1001);
  CHECK_THROWS_AS(run_pipeline(C("y - x^2"), cfg), GuardrailError);
  cfg.H = 6;
  cfg.mode = Mode::BruteOnly;
  auto brute = run_pipeline(C("x^3 + y^3 - 1"), cfg);
  CHECK(brute.regime == Regime::BruteFallback);
  cfg.mode = Mode::CertifyOnly;
  auto cert = run_pipeline(C("x^3 + y^3 - 1"), cfg);
  CHECK(!cert.brute_total.has_value());
  CHECK(cert.total == brute.total);
  cfg.guardrails.max_wronskian_degree = 10;
  CHECK(run_pipeline(C("x^3 + y^3 - 1"), cfg).regime == Regime::BudgetFallback);
  PipelineConfig big = at(1001);
  big.force = true;
  big.mode = Mode::BruteOnly;
  CHECK(run_pipeline(C("x^2 + y^2 - 3"), big).total == 0);
}

TEST_CASE("config from json") {
  auto cfg = config_from_json(nlohmann::json::parse(R"({"H": 50, "k": 3, "mode": "brute-only",
      "guardrails": {"max_height": 60}})"));
  CHECK(cfg.H == 50);
  CHECK(cfg.k_override == 3);
  CHECK(!cfg.r_override);
  CHECK(cfg.mode == Mode::BruteOnly);
  CHECK(cfg.guardrails.max_height == 60);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"mode": "fast"})")), PreconditionError);
}

TEST_CASE("family runs") {
  FamilySpec fermat{"fermat", 3, 6};
  auto curves = make_family(fermat);
  CHECK(curves.size() == 4);
  PipelineConfig brute;
  brute.mode = Mode::BruteOnly;
  auto csv = run_family(curves, {10, 100, 1000}, brute);
  auto rows = lines(csv);
  REQUIRE(rows.size() == 2 + 12);
  CHECK(rows[0] == "#polya-pila v1");
  CHECK(lines(run_family(curves, {}, {})).size() == 2);

  FamilySpec dense{"random-dense", 5, 5, 2, 7};
  auto a = make_family(dense), b = make_family(dense);
  REQUIRE(a.size() == 2);
  CHECK(a[0].name == b[0].name);
  CHECK(a[1].name == b[1].name);
  CHECK(a[0].name != a[1].name);
  CHECK(run_family(a, {2, 30}, brute) == run_family(b, {2, 30}, brute));

  // a failing row is recorded and the run continues
  PipelineConfig strict;
  strict.guardrails.max_height = 50;
  auto mixed = lines(run_family(make_family({"circle-like", 0, 0, 2}), {10, 100}, strict));
  REQUIRE(mixed.size() == 2 + 4);
  CHECK(mixed[2].find("\"ok\"") != std::string::npos);
  CHECK(mixed[3].find("error:") != std::string::npos);
  CHECK_THROWS_AS(make_family({"spiral"}), PreconditionError);
}

TEST_CASE("dimension growth demo") {
  auto vars = std::vector<std::string>{"x1", "x2", "x3"};
  auto rows = lines(dgc_demo(parse_sparse("x1^2 + x2^2 + x3^2 - 3", vars), {1}));
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].rfind("1,8,8,8,", 0) == 0);
  auto plane = lines(dgc_demo(parse_sparse("x1 + x2 + x3", vars), {1}));
  CHECK(plane[2].rfind("1,7,7,7,", 0) == 0);
  auto cubic = enumerate_hypersurface_points(parse_sparse("x1^3 + x2^3 + x3^3 - 3", vars), 4);
  CHECK(cubic.total == cubic.slice_sum);
  CHECK(cubic.total == count_hypersurface_by_triples(parse_sparse("x1^3 + x2^3 + x3^3 - 3", vars), 4));
}
