#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omega/harness.hpp"
#include "testutil.hpp"

using namespace omega;
using omega::testutil::P;
using omega::testutil::map_of;

namespace {

FormOnP2 quad_form() {
  return FormOnP2::from_single_chart(
      1, 2, 4, Chart::UX, parse_hs("v*d1(u)^2 - u*d1(u)*d1(v) + d1(v)^2", 1, {"u", "v"}));
}

FormOnP2 wronskian_form() {
  std::array<HsElem<Poly>, 3> exprs{
      parse_hs("d1(v)*d2(u) - d1(u)*d2(v)", 2, {"u", "v"}),
      parse_hs("d1(a)*d2(b) - d1(b)*d2(a)", 2, {"a", "b"}),
      parse_hs("d1(q)*d2(p) - d1(p)*d2(q)", 2, {"p", "q"}),
  };
  return FormOnP2::from_all_charts(2, 3, 3, std::move(exprs));
}

QuadFamily fixture_family() {
  std::vector<PointP1> params;
  for (long i = -8; i <= 7; ++i) params.push_back(PointP1::affine(i));
  params.push_back(PointP1::affine(Rational(1, 2)));
  return make_quad_family(P("X"), P("Y"), P("Z"), params);
}

std::vector<IntegralComponent> family_components(const QuadFamily& fam, long k) {
  std::vector<IntegralComponent> comps;
  for (long i = 0; i < k; ++i) {
    const PointP1& p = fam.parameters[i];
    comps.push_back({fam.line_at(p), fam.line_param(p)});
  }
  return comps;
}

}  // namespace

TEST_CASE("main inequality: envelope vs 9 family lines is FORCED_AND_CONFIRMED") {
  FormOnP2 w = quad_form();
  QuadFamily fam = fixture_family();
  RationalMap envelope = map_of("s^2", "2*s*t", "t^2");
  ScenarioReport rep = main_inequality_report(w, family_components(fam, 9), envelope);
  CHECK(rep.lhs == Rational(10));  // 18 - 8
  CHECK(rep.rhs == Rational(9));
  CHECK(rep.integral);
  CHECK(rep.verdict == Verdict::FORCED_AND_CONFIRMED);
  CHECK(rep.snc == "VerifiedLines");
  for (long n : rep.per_component) CHECK(n == 1);
}

TEST_CASE("main inequality: wronskian examples are vacuous") {
  FormOnP2 w = wronskian_form();
  std::vector<Poly> lines{P("X + Y + Z"), P("X - Y + 2*Z"), P("2*X + Y - Z"), P("X - 3*Y - Z")};
  std::vector<IntegralComponent> comps;
  for (const auto& l : lines) comps.push_back({l, parametrize_line(l)});
  RationalMap conic = map_of("s^2", "s*t", "t^2");
  ScenarioReport rep = main_inequality_report(w, comps, conic);
  CHECK(rep.lhs == Rational(2));  // 8 - 6
  CHECK(rep.rhs == Rational(8));
  CHECK_FALSE(rep.integral);
  CHECK(rep.verdict == Verdict::CONTRAPOSITIVE_OK);
  RationalMap line = parametrize_line(P("3*X + 2*Y + Z"));
  ScenarioReport rep2 = main_inequality_report(w, comps, line);
  CHECK(rep2.lhs == Rational(1));  // 4 - 3
  CHECK(rep2.rhs == Rational(4));
  CHECK(rep2.integral);
  CHECK(rep2.verdict == Verdict::VACUOUS);
}

TEST_CASE("main inequality rejects non-integral components") {
  FormOnP2 w = quad_form();
  std::vector<IntegralComponent> comps{{P("Y"), parametrize_line(P("Y"))}};
  RationalMap conic = map_of("s^2", "s*t", "t^2");
  try {
    main_inequality_report(w, comps, conic);
    CHECK(false);
  } catch (const CalcError& e) {
    CHECK(e.code() == Errc::ComponentNotIntegral);
  }
}

TEST_CASE("dosvar curated cases") {
  FormOnP2 w = wronskian_form();
  IntegralComponent yline{P("Y"), parametrize_line(P("Y"))};
  // (x0, x1) = (t, t^3): map [s t^2 : s^3 : t^3], Q at affine 0.
  RationalMap cusp = map_of("s*t^2", "s^3", "t^3");
  DosvarReport rep = dosvar_order_check(w, {yline}, cusp, PointP1::affine(0));
  CHECK(rep.orders == std::vector<long>{3});
  CHECK(rep.bound == 1);
  REQUIRE(rep.actual.has_value());
  CHECK(*rep.actual == 1);
  CHECK(rep.ok);
  // (x0, x1) = (t^2, t^3): bound 1, actual 2.
  RationalMap cusp2 = map_of("s^2*t", "s^3", "t^3");
  DosvarReport rep2 = dosvar_order_check(w, {yline}, cusp2, PointP1::affine(0));
  CHECK(rep2.bound == 1);
  REQUIRE(rep2.actual.has_value());
  CHECK(*rep2.actual == 2);
  CHECK(rep2.ok);
}

TEST_CASE("dosvar on the envelope tangency gives an infinite order") {
  FormOnP2 w = quad_form();
  QuadFamily fam = fixture_family();
  RationalMap envelope = fam.envelope_param;
  const PointP1& par = fam.parameters[2];
  IntegralComponent comp{fam.line_at(par), fam.line_param(par)};
  // The tangency point of member lambda on the envelope is at parameter
  // [t0 : -s0]; contact order 2 > m = 1.
  PointP1 q(par.t, -par.s);
  DosvarReport rep = dosvar_order_check(w, {comp}, envelope, q);
  CHECK(rep.orders == std::vector<long>{2});
  CHECK(rep.bound == 1);
  CHECK_FALSE(rep.actual.has_value());  // pullback vanishes identically
  CHECK(rep.ok);
}

TEST_CASE("dosvar at the point at infinity of the source") {
  // The cusp reparametrized by s <-> t has its high-contact point at [1:0].
  FormOnP2 w = wronskian_form();
  IntegralComponent yline{P("Y"), parametrize_line(P("Y"))};
  RationalMap flipped = map_of("s^2*t", "t^3", "s^3");
  DosvarReport rep = dosvar_order_check(w, {yline}, flipped, PointP1::infinity());
  CHECK(rep.orders == std::vector<long>{3});
  CHECK(rep.bound == 1);
  REQUIRE(rep.actual.has_value());
  CHECK(*rep.actual == 1);
  CHECK(rep.ok);
}

TEST_CASE("dosvar hypothesis failures are reported") {
  FormOnP2 w = wronskian_form();
  IntegralComponent yline{P("Y"), parametrize_line(P("Y"))};
  RationalMap conic = map_of("s^2", "s*t", "t^2");  // contact order 1 at 0
  try {
    dosvar_order_check(w, {yline}, conic, PointP1::affine(0));
    CHECK(false);
  } catch (const CalcError& e) {
    CHECK(e.code() == Errc::HypothesisFailed);
  }
}

TEST_CASE("noguchi-wang worked examples") {
  std::vector<Poly> five{P("X"), P("Y"), P("Z"), P("X + Y + Z"), P("X + 2*Y + 3*Z")};
  RationalMap conic = map_of("s^2", "s*t", "t^2");
  NWReport rep = noguchi_wang_check(five, conic);
  CHECK(rep.lhs == Rational(4));
  CHECK(rep.rhs == Rational(10));
  CHECK(rep.ok);
  // q = 3: zero left side.
  std::vector<Poly> three{P("X"), P("Y"), P("Z")};
  NWReport rep3 = noguchi_wang_check(three, conic);
  CHECK(rep3.lhs == Rational(0));
  CHECK(rep3.ok);
  // Nodal-style cubic fixture.
  RationalMap cubic = map_of("s^3", "s^2*t - s*t^2", "t^3");
  std::vector<Poly> four{P("X"), P("Y"), P("Z"), P("X + Y + Z")};
  NWReport repc = noguchi_wang_check(four, cubic);
  CHECK(repc.lhs == Rational(3));
  CHECK(repc.ok);
  // Lines are rejected.
  RationalMap line = parametrize_line(P("X + Y + Z"));
  CHECK_THROWS_AS(noguchi_wang_check(three, line), CalcError);
}

TEST_CASE("sigma on P^2") {
  CHECK(sigma_p2(1, 4) == Rational(4));
  CHECK(sigma_p2(2, 4) == Rational(2));
}

TEST_CASE("quad2 scenario: transversal line vs the envelope") {
  QuadFamily fam = fixture_family();
  REQUIRE(fam.parameters.size() == 17);
  // A line not in the family and not the envelope.
  RationalMap line = parametrize_line(P("X + 5*Y + 2*Z"));
  QuadReport rep = quad_family_scenario(fam, Rational(1, 4), line);
  CHECK_FALSE(rep.in_exceptional);
  CHECK(rep.lhs == Rational(51, 4));
  CHECK(rep.rhs == Rational(17));
  CHECK(rep.ok);
  // The envelope is exceptional, and its would-be inequality fails.
  QuadReport repe = quad_family_scenario(fam, Rational(1, 4), fam.envelope_param);
  CHECK(repe.in_exceptional);
  CHECK(repe.lhs == Rational(51, 2));
  CHECK(repe.rhs == Rational(17));
  CHECK(repe.lhs > repe.rhs);
  // Precondition q > 4/eps.
  CHECK_THROWS_AS(quad_family_scenario(fam, Rational(1, 5), line), CalcError);
}

TEST_CASE("exceptional set of the quadratic family") {
  QuadFamily fam = fixture_family();
  ExceptionalSet z = exceptional_set_quadfamily(fam);
  CHECK(z.envelope == P("Y^2 - 4*X*Z").primitive_normalized());
  CHECK(z.components.size() == 18);
  // Tangency: the member at [1:1] meets the envelope at one point of order 2.
  OrderRow row = vanishing_orders(fam.envelope_param, fam.line_at(PointP1::affine(1)));
  REQUIRE(row.rational_points.size() == 1);
  CHECK(row.rational_points[0].second == 2);
  // Degenerate family: concurrent lines a = X, b = Y, c = X + Y.
  CHECK_THROWS_AS(make_quad_family(P("X"), P("Y"), P("X + Y"), {}), CalcError);
}

TEST_CASE("general position family transported by a projectivity") {
  // Non-standard (a, b, c): the machinery must not depend on the fixture.
  QuadFamily fam = make_quad_family(P("X + Z"), P("Y"), P("Z - Y"),
                                    {PointP1::affine(0), PointP1::affine(1),
                                     PointP1::affine(-1), PointP1::affine(2),
                                     PointP1::affine(3)});
  CHECK(image_in_curve(fam.envelope_param, fam.envelope));
  for (const auto& par : fam.parameters) {
    OrderRow row = vanishing_orders(fam.envelope_param, fam.line_at(par));
    REQUIRE(row.rational_points.size() == 1);
    CHECK(row.rational_points[0].second == 2);
  }
}

TEST_CASE("is_campana worked examples") {
  QuadFamily fam = fixture_family();
  PlaneDivisor d5 = make_divisor({fam.line_at(fam.parameters[0]), fam.line_at(fam.parameters[1]),
                                  fam.line_at(fam.parameters[2]), fam.line_at(fam.parameters[3]),
                                  fam.line_at(fam.parameters[4])},
                                 true);
  std::vector<Rational> half(5, Rational(1, 2));
  CHECK(is_campana(fam.envelope_param, d5, half));
  RationalMap generic = parametrize_line(P("X + 5*Y + 2*Z"));
  CHECK_FALSE(is_campana(generic, d5, half));
  std::vector<Rational> ones(5, Rational(1));
  CHECK(is_campana(generic, d5, ones));
}

TEST_CASE("campana_check on the quad fixture") {
  FormOnP2 w = quad_form();
  QuadFamily fam = fixture_family();
  std::vector<Rational> eps(17, Rational(1, 2));
  // M (-4 + 17*(1 - 1/2)) = M * 9/2: M = 2 gives 9 = deg A + deg E.
  CampanaWitness witness;
  witness.multiple = 2;
  witness.deg_ample = 1;
  witness.deg_effective = 8;
  Poly e;
  for (int i = 0; i < 8; ++i) {
    Poly l = fam.line_at(fam.parameters[i]);
    e = e.is_zero() ? l : e * l;
  }
  witness.effective = e;
  CampanaReport rep = campana_check(w, fam, eps, witness, fam.envelope_param);
  CHECK(rep.campana);
  CHECK(rep.in_z);
  CHECK(rep.ok);
  // Invalid witness: E not effective.
  CampanaWitness bad = witness;
  bad.deg_ample = 10;
  bad.deg_effective = -1;
  try {
    campana_check(w, fam, eps, bad, fam.envelope_param);
    CHECK(false);
  } catch (const CalcError& er) {
    CHECK(er.code() == Errc::WitnessInvalid);
  }
  // Non-Campana curves are rejected.
  RationalMap generic = parametrize_line(P("X + 5*Y + 2*Z"));
  try {
    campana_check(w, fam, eps, witness, generic);
    CHECK(false);
  } catch (const CalcError& er) {
    CHECK(er.code() == Errc::NotCampana);
  }
}

TEST_CASE("structured Campana search finds nothing outside Z") {
  FormOnP2 w = quad_form();
  QuadFamily fam = fixture_family();
  std::vector<Rational> eps(17, Rational(1, 2));
  CampanaSearchResult res = campana_conic_search(w, fam, eps, 4242, 40);
  CHECK(res.candidates > 0);
  CHECK(res.campana_found > 0);
  CHECK(res.envelope_recovered);
  CHECK(res.outside_z == 0);
}

TEST_CASE("reports are idempotent") {
  FormOnP2 w = quad_form();
  QuadFamily fam = fixture_family();
  RationalMap envelope = map_of("s^2", "2*s*t", "t^2");
  ScenarioReport a = main_inequality_report(w, family_components(fam, 9), envelope);
  ScenarioReport b = main_inequality_report(w, family_components(fam, 9), envelope);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.verdict == b.verdict);
  CHECK(a.per_component == b.per_component);
}

TEST_CASE("fuzz: zero trials give a header-only CSV") {
  FuzzConfig cfg;
  cfg.kind = CampaignKind::NoguchiWang;
  cfg.trials = 0;
  FuzzOutcome out = fuzz_campaign(cfg, {});
  CHECK(out.rows == 0);
  CHECK(out.violations == 0);
  CHECK(out.csv == "trial,scenario,map_degree,lhs,rhs,verdict,integral,notes\r\n");
}

TEST_CASE("fuzz: identical seeds give identical CSV") {
  FormOnP2 w = wronskian_form();
  FuzzConfig cfg;
  cfg.kind = CampaignKind::WronskianMain;
  cfg.seed = 42;
  cfg.trials = 12;
  cfg.max_degree = 3;
  FuzzContext ctx;
  ctx.wronskian = &w;
  FuzzOutcome a = fuzz_campaign(cfg, ctx);
  FuzzOutcome b = fuzz_campaign(cfg, ctx);
  CHECK(a.csv == b.csv);
  CHECK(a.rows == 12);
  CHECK(a.violations == 0);
  cfg.seed = 43;
  FuzzOutcome c = fuzz_campaign(cfg, ctx);
  CHECK(a.csv != c.csv);
}

TEST_CASE("fuzz: small dosvar and quad2 campaigns run clean") {
  FormOnP2 w = wronskian_form();
  FormOnP2 qf = quad_form();
  QuadFamily fam = fixture_family();
  FuzzContext ctx;
  ctx.wronskian = &w;
  ctx.quad = &qf;
  ctx.family = &fam;
  FuzzConfig cfg;
  cfg.kind = CampaignKind::Dosvar;
  cfg.seed = 7;
  cfg.trials = 20;
  FuzzOutcome a = fuzz_campaign(cfg, ctx);
  CHECK(a.violations == 0);
  cfg.kind = CampaignKind::QuadTwo;
  cfg.max_degree = 3;
  FuzzOutcome b = fuzz_campaign(cfg, ctx);
  CHECK(b.violations == 0);
}
