#include "doctest.h"
#include "cli.hpp"
#include "majorant/io.hpp"
#include "support.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace majorant;
using namespace majorant::testing;

namespace {

std::string data(const char* name) { return std::string(MAJORANT_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "majorant");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kQuadratic = R"({"dim_x": 1, "dim_y": 1, "mode": "exact", "profile_x": "scalar",
  "profile_y": "scalar", "degree_cap": 2,
  "terms": [{"output": 0, "alpha": [1], "beta": [0], "value": "1"},
            {"output": 0, "alpha": [0], "beta": [2], "value": "1"}]})";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("parse_spec") {
    auto doc = parse_spec_text(kQuadratic);
    CHECK(doc.kind == SpecKind::Equation);
    CHECK(doc.mode() == Mode::Exact);
    const auto& eq = std::get<EquationSpec<Rational>>(doc.equation);
    CHECK(eq.psi[0].coefficient(MultiIndex({0, 2})) == 1);

    CHECK(parse_spec_text(kQuadratic, Mode::Float).mode() == Mode::Float);
    CHECK(parse_spec(data("comparison_quadratic.json")).kind == SpecKind::Comparison);

    CHECK_THROWS_WITH_AS(parse_spec(data("bad_linear_y.json")), doctest::Contains("linear y term"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_spec(data("bad_rational_float.json")), doctest::Contains("not allowed in float mode"),
                         ParseError);
    CHECK_THROWS_AS(parse_spec_text("{not json"), ParseError);
    CHECK_THROWS_AS(parse_spec_text(R"({"dim_x": 1})"), ParseError);
  }

  TEST_CASE("rational literals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK(format_scalar(parse_rational("4/2")) == "2");
    CHECK(format_scalar(0.1) == "0.1");
  }

  TEST_CASE("property: spec round trip") {
    std::mt19937_64 rng(61);
    RandomEquationShape shape;
    shape.random_profiles = true;
    for (int trial = 0; trial < 40; ++trial) {
      auto eq = random_equation(rng, shape);
      auto doc = parse_spec_text(spec_to_json(eq).dump());
      const auto& back = std::get<EquationSpec<Rational>>(doc.equation);
      CHECK(back.psi == eq.psi);
      CHECK(back.profile_x.kind == eq.profile_x.kind);
      CHECK(back.profile_y.kind == eq.profile_y.kind);
      auto sol = solve_formal(eq, 4);
      CHECK(solution_from_json<Rational>(solution_to_json(sol)).phi == sol.phi);
    }
  }
}

TEST_SUITE("cli") {
  TEST_CASE("solve prints Catalan coefficients deterministically") {
    auto a = run_cli({"solve", "--spec", data("quadratic.json"), "--degree", "6"});
    CHECK(a.code == 0);
    auto doc = json::parse(a.out);
    CHECK(doc["source"] == "iterative");
    CHECK(doc["components"][0].size() == 6);
    CHECK(run_cli({"solve", "--spec", data("quadratic.json"), "--degree", "6"}).out == a.out);
    auto oracle = run_cli({"solve", "--spec", data("quadratic.json"), "--degree", "6", "--oracle"});
    CHECK(oracle.code == 0);
    CHECK(json::parse(oracle.out)["components"] == doc["components"]);
    CHECK(run_cli({"solve", "--spec", data("quadratic.json"), "--degree", "7", "--oracle"}).code == 2);
  }

  TEST_CASE("numeric verbs") {
    auto hille = run_cli({"hille", "--spec", data("quadratic.json")});
    CHECK(hille.code == 0);
    CHECK(json::parse(hille.out)["X_star"].get<double>() == doctest::Approx(0.25));

    auto inside = run_cli({"membership", "--spec", data("comparison_quadratic.json"), "--X", "0.2"});
    CHECK(inside.code == 0);
    CHECK(json::parse(inside.out)["verdict"] == "Inside");
    auto outside = run_cli({"membership", "--spec", data("quadratic.json"), "--X", "0.3"});
    CHECK(json::parse(outside.out)["verdict"] == "Outside");

    auto trace = run_cli({"iterate", "--spec", data("quadratic_minus.json"), "--X", "0.2", "--x", "0.2"});
    CHECK(trace.code == 0);
    CHECK(trace.out.rfind("p,Y0,y0,bound0,delta0\n", 0) == 0);
    CHECK(run_cli({"iterate", "--spec", data("quadratic_minus.json"), "--X", "0.3", "--x", "0.3"}).code == 1);

    auto region = run_cli({"region", "--spec", data("quadratic.json"), "--ymax", "1", "--steps", "4"});
    CHECK(region.code == 0);
    CHECK(region.out.find("\n0.5,0.2499999") != std::string::npos);

    auto check = run_cli({"check", "--spec", data("quadratic_minus.json"), "--samples", "200"});
    CHECK(check.code == 0);
    CHECK(json::parse(check.out)["violations"] == 0);

    auto radius = run_cli({"radius", "--spec", data("quadratic.json"), "--tol", "1e-5"});
    CHECK(radius.code == 0);
    auto r = json::parse(radius.out);
    CHECK(r["t_in"].get<double>() <= 0.25);
    CHECK(r["t_out"].get<double>() >= 0.25);

    auto maj = run_cli({"majorant", "--spec", data("quadratic_minus.json")});
    CHECK(maj.code == 0);
    CHECK(maj.out.find("-1") == std::string::npos);
  }

  TEST_CASE("exit codes for bad input") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"solve"}).code == 2);
    CHECK(run_cli({"solve", "--spec", data("missing.json")}).code == 2);
    CHECK(run_cli({"solve", "--spec", data("bad_linear_y.json")}).code == 2);
    auto bad = run_cli({"solve", "--spec", data("bad_rational_float.json")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("not allowed in float mode") != std::string::npos);
    CHECK(run_cli({"membership", "--spec", data("quadratic.json"), "--X", "-1"}).code == 2);
    CHECK(run_cli({"solve", "--spec", data("quadratic.json"), "--mode", "fuzzy"}).code == 2);
  }
}
