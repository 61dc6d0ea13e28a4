#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "omega/scenario.hpp"
#include "testutil.hpp"

using namespace omega;

namespace {

const char* kMinimal = R"scn(
form quad {
  order = 1
  degree = 2
  twist = 4
  chart_UX = "v*d1(u)^2 - u*d1(u)*d1(v) + d1(v)^2"
}
check c1 {
  type = "integrality"
  form = "quad"
}
)scn";

}  // namespace

TEST_CASE("minimal scenario parses") {
  Scenario s = parse_scenario(kMinimal);
  CHECK(s.forms.size() == 1);
  CHECK(s.checks.size() == 1);
  CHECK(s.forms.count("quad") == 1);
  CHECK(s.forms.at("quad").degree() == 2);
}

TEST_CASE("undefined references are named") {
  std::string text = std::string(kMinimal) + R"scn(
check broken {
  type = "main"
  form = "quad"
  map = "ghost"
  divisor = "lines"
}
)scn";
  try {
    parse_scenario(text);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.code() == Errc::UnknownReference);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("malformed polynomials carry file positions") {
  const char* text = R"scn(map bad {
  F0 = "X^+2"
  F1 = "s"
  F2 = "t"
})scn";
  try {
    parse_scenario(text);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(e.pos().line == 2);
  }
}

TEST_CASE("duplicate names are rejected") {
  std::string text = std::string(kMinimal) + R"scn(
form quad {
  order = 1
  degree = 2
  twist = 4
  chart_UX = "d1(u)*d1(v)"
}
)scn";
  try {
    parse_scenario(text);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.code() == Errc::DuplicateName);
  }
}

TEST_CASE("print-then-parse round trip") {
  std::ifstream in1("scenarios/quad.scn"), in2("scenarios/wronskian.scn");
  for (std::ifstream* in : {&in1, &in2}) {
    REQUIRE(in->good());
    std::ostringstream ss;
    ss << in->rdbuf();
    Scenario s = parse_scenario(ss.str());
    Scenario s2 = parse_scenario(print_scenario(s));
    CHECK(s == s2);
    CHECK(print_scenario(s) == print_scenario(s2));
  }
}

TEST_CASE("fixture scenarios resolve to the expected objects") {
  Scenario quad = load_scenario_file("scenarios/quad.scn");
  CHECK(quad.forms.count("quad") == 1);
  CHECK(quad.families.at("quadfam").parameters.size() == 17);
  CHECK(quad.maps.count("envelope") == 1);
  CHECK(quad.checks.size() == 5);
  CHECK(quad.campaigns.size() == 2);
  CHECK(quad.branch_queries.size() == 2);
  Scenario wron = load_scenario_file("scenarios/wronskian.scn");
  CHECK(wron.forms.at("wronskian").order() == 2);
  CHECK(wron.campaigns.size() == 3);
}

TEST_CASE("unknown block kinds and entry types are diagnosed") {
  CHECK_THROWS_AS(parse_scenario("gizmo g { a = 1 }"), ParseError);
  CHECK_THROWS_AS(parse_scenario("map m { F0 = 1 F1 = \"s\" F2 = \"t\" }"), ParseError);
  CHECK_THROWS_AS(parse_scenario("map m { F0 = \"s\" F0 = \"s\" F1 = \"s\" F2 = \"t\" }"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario("form f { order = 1 degree = 2 twist = 4 }"), ParseError);
}
