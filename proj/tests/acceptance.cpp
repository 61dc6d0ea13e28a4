// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: acceptance <path-to-omega-cli> <scenario-dir>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "omega/scenario.hpp"
#include "testutil.hpp"

using namespace omega;
using omega::testutil::P;
using omega::testutil::map_of;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (elapsed > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("%s criterion-%d %s (%.2fs, budget %.0fs)%s%s\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), elapsed, budget_seconds, detail.empty() ? "" : " -- ",
              detail.c_str());
  if (!ok) ++g_failures;
}

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

long count_csv(const std::string& csv, const std::string& needle) {
  long n = 0;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <path-to-omega-cli> <scenario-dir>\n");
    return 64;
  }
  std::string cli = argv[1];
  std::string scn = argv[2];

  FormOnP2 quad = quad_form();
  FormOnP2 wron = wronskian_form();
  QuadFamily fam = fixture_family();

  // 1. The discriminant subcommand reproduces Y^2 - 4*X*Z on the fixture.
  criterion(1, "discriminant CLI reproduces Y^2 - 4*X*Z", 1.0, [&](std::string& detail) {
    std::string outfile = "acceptance_c1.out";
    std::string cmdline = cli + " discriminant --input " + scn + "/quad.scn --out " + outfile;
    int rc = std::system(cmdline.c_str());
    if (rc != 0) {
      detail = "CLI exited with " + std::to_string(rc);
      return false;
    }
    std::ifstream in(outfile);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(outfile.c_str());
    if (ss.str().find("Delta(quad) = Y^2 - 4*X*Z\n") == std::string::npos) {
      detail = "unexpected output: " + ss.str();
      return false;
    }
    return true;
  });

  // 2. Integrality classification on the quadratic-family fixture.
  criterion(2, "quad fixture integrality classification", 10.0, [&](std::string& detail) {
    for (const auto& par : fam.parameters)
      if (!is_integral_parametrized(quad, fam.line_param(par))) {
        detail = "family line not integral";
        return false;
      }
    if (!is_integral_parametrized(quad, fam.envelope_param)) {
      detail = "envelope not integral";
      return false;
    }
    Rng rng(2026);
    long lines_checked = 0;
    while (lines_checked < 50) {
      Poly l = random_line_arrangement(rng, 1)[0];
      // Members of the full quadratic family satisfy b^2 = a*c on (X, Y, Z)
      // coefficients; skip them (they are integral by design).
      Rational a(0), b(0), c(0);
      for (const auto& [e, coef] : l.terms())
        for (size_t i = 0; i < l.vars().size(); ++i) {
          if (e[i] != 1) continue;
          if (l.vars()[i] == "X") a = coef;
          if (l.vars()[i] == "Y") b = coef;
          if (l.vars()[i] == "Z") c = coef;
        }
      if (b * b == a * c) continue;
      if (is_integral_parametrized(quad, parametrize_line(l))) {
        detail = "non-family line tested integral: " + l.str();
        return false;
      }
      ++lines_checked;
    }
    long conics_checked = 0;
    while (conics_checked < 50) {
      RationalMap phi = random_map(rng, 2);
      if (image_is_line(phi)) continue;
      if (image_in_curve(phi, fam.envelope)) continue;
      if (is_integral_parametrized(quad, phi)) {
        detail = "non-envelope conic tested integral: " + phi.str();
        return false;
      }
      ++conics_checked;
    }
    return true;
  });

  // 3. Wronskian fixture: lines pull back to zero, non-lines do not.
  criterion(3, "wronskian pullbacks: 50 lines zero, 50 non-lines nonzero", 30.0,
            [&](std::string& detail) {
    Rng rng(2027);
    for (int i = 0; i < 50; ++i) {
      Poly l = random_line_arrangement(rng, 1)[0];
      if (!is_integral_parametrized(wron, parametrize_line(l))) {
        detail = "line with nonzero pullback: " + l.str();
        return false;
      }
    }
    long checked = 0;
    while (checked < 50) {
      RationalMap phi = random_map(rng, rng.uniform(2, 4));
      if (image_is_line(phi)) continue;
      if (is_integral_parametrized(wron, phi)) {
        detail = "non-line map with zero pullback: " + phi.str();
        return false;
      }
      ++checked;
    }
    return true;
  });

  // 4. Local vanishing-order bound: fuzzed trials plus the curated cusp case.
  criterion(4, "dosvar bound on 200 verified trials + curated case", 60.0,
            [&](std::string& detail) {
    IntegralComponent yline{P("Y"), parametrize_line(P("Y"))};
    RationalMap cusp = map_of("s*t^2", "s^3", "t^3");
    DosvarReport rep = dosvar_order_check(wron, {yline}, cusp, PointP1::affine(0));
    if (rep.bound != 1 || !rep.actual || *rep.actual != 1) {
      detail = "curated case: bound " + std::to_string(rep.bound);
      return false;
    }
    FuzzConfig cfg;
    cfg.kind = CampaignKind::Dosvar;
    cfg.seed = 20260810;
    cfg.trials = 240;
    FuzzContext ctx;
    ctx.wronskian = &wron;
    ctx.quad = &quad;
    ctx.family = &fam;
    FuzzOutcome out = fuzz_campaign(cfg, ctx);
    long verified = count_csv(out.csv, ",OK,");
    if (out.violations != 0) {
      detail = "violations: " + std::to_string(out.violations);
      return false;
    }
    if (verified < 200) {
      detail = "only " + std::to_string(verified) + " verified trials";
      return false;
    }
    detail = std::to_string(verified) + " verified trials";
    return true;
  });

  // 5. Height-inequality contrapositive fuzz plus the curated forced case.
  criterion(5, "height-inequality fuzz: 500 trials, zero violations + forced case", 300.0,
            [&](std::string& detail) {
    std::vector<IntegralComponent> nine;
    for (long i = 0; i < 9; ++i)
      nine.push_back({fam.line_at(fam.parameters[i]), fam.line_param(fam.parameters[i])});
    ScenarioReport forced = main_inequality_report(quad, nine, fam.envelope_param);
    if (forced.lhs != Rational(10) || forced.rhs != Rational(9) ||
        forced.verdict != Verdict::FORCED_AND_CONFIRMED) {
      detail = "curated forced case failed: LHS " + to_string(forced.lhs) + " RHS " +
               to_string(forced.rhs);
      return false;
    }
    FuzzContext ctx;
    ctx.wronskian = &wron;
    ctx.quad = &quad;
    ctx.family = &fam;
    long rows = 0, violations = 0;
    for (CampaignKind kind : {CampaignKind::WronskianMain, CampaignKind::QuadMain}) {
      FuzzConfig cfg;
      cfg.kind = kind;
      cfg.seed = 42;
      cfg.trials = 250;
      cfg.max_degree = 5;
      FuzzOutcome out = fuzz_campaign(cfg, ctx);
      rows += out.rows;
      violations += out.violations;
    }
    if (violations != 0) {
      detail = "violations: " + std::to_string(violations);
      return false;
    }
    detail = std::to_string(rows) + " trials";
    return rows == 500;
  });

  // 6. Noguchi-Wang inequality on verified line arrangements.
  criterion(6, "noguchi-wang fuzz: 300 trials, zero failures", 120.0, [&](std::string& detail) {
    FuzzConfig cfg;
    cfg.kind = CampaignKind::NoguchiWang;
    cfg.seed = 42;
    cfg.trials = 300;
    cfg.max_degree = 4;
    FuzzOutcome out = fuzz_campaign(cfg, {});
    detail = std::to_string(out.rows) + " trials";
    return out.violations == 0 && out.rows == 300;
  });

  // 7. Corollary quad2: fuzz outside Y u D plus the envelope membership.
  criterion(7, "quad2 fuzz: 300 trials + envelope exceptional", 120.0, [&](std::string& detail) {
    QuadReport env = quad_family_scenario(fam, Rational(1, 4), fam.envelope_param);
    if (!env.in_exceptional || env.lhs != Rational(51, 2) || env.rhs != Rational(17) ||
        !(env.lhs > env.rhs)) {
      detail = "envelope case: lhs " + to_string(env.lhs) + " rhs " + to_string(env.rhs);
      return false;
    }
    FuzzConfig cfg;
    cfg.kind = CampaignKind::QuadTwo;
    cfg.seed = 42;
    cfg.trials = 300;
    cfg.max_degree = 4;
    FuzzContext ctx;
    ctx.quad = &quad;
    ctx.family = &fam;
    FuzzOutcome out = fuzz_campaign(cfg, ctx);
    detail = std::to_string(out.rows) + " trials";
    return out.violations == 0 && out.rows == 300;
  });

  // 8. Local branch suite at 100 seeded points off the discriminant.
  criterion(8, "branch suite at 100 points off Delta", 120.0, [&](std::string& detail) {
    Rng rng(2028);
    long points = 0;
    long rational_points_seen = 0;
    while (points < 100) {
      Rational u, v;
      if (points % 2 == 0) {
        // Intersection of two member lines: rational splitting.
        Rational l1(rng.uniform(-9, 9)), l2(rng.uniform(-9, 9));
        if (l1 == l2) continue;
        u = -(l1 + l2);
        v = l1 * l2;
      } else {
        u = rng.small_rational(6, 3);
        v = rng.small_rational(6, 3);
        if (u * u - 4 * v == 0) continue;
      }
      BranchReport rep = local_branches(quad, Chart::UX, u, v, 12);
      if (rep.total_multiplicity != 2 ||
          (long)rep.rational_factors.size() + rep.irrational_multiplicity != 2) {
        detail = "multiplicity bookkeeping failed";
        return false;
      }
      if (!rep.tangents_distinct || !rep.hensel_product_ok) {
        detail = "tangency or Hensel product failed at (" + to_string(u) + "," + to_string(v) + ")";
        return false;
      }
      for (const auto& f : rep.rational_factors)
        if (f.annihilation_order < 12) {
          detail = "branch annihilation below order 12";
          return false;
        }
      rational_points_seen += (long)rep.rational_factors.size();
      ++points;
    }
    detail = std::to_string(rational_points_seen) + " rational branches certified";
    return true;
  });

  // 9. Structural properties of the algebra and the counting machinery.
  criterion(9, "structural properties (Leibniz, dife, functoriality, heights, eio)", 180.0,
            [&](std::string& detail) {
    Rng rng(2029);
    // Leibniz on 100 random pairs.
    for (int trial = 0; trial < 100; ++trial) {
      int m = (int)rng.uniform(1, 3);
      auto rand_rf = [&]() {
        Poly t = Poly::variable("t");
        Poly num, den;
        for (int i = 0; i < 3; ++i) num += t.pow(rng.uniform(0, 3)) * Rational(rng.uniform(-3, 3));
        den = t * Rational(rng.uniform(-2, 2)) + Poly::constant(rng.uniform(1, 3));
        if (num.is_zero()) num = t;
        return RatFunc(num, den, "t");
      };
      RatFunc f = rand_rf(), g = rand_rf();
      for (int k = 1; k <= m; ++k) {
        HsElem<RatFunc> lhs = hs_derive(f * g, k, m);
        HsElem<RatFunc> rhs(m, std::vector<std::string>{"t"});
        for (int i = 0; i <= k; ++i) rhs = rhs + hs_derive(f, i, m) * hs_derive(g, k - i, m);
        if (!(lhs == rhs)) {
          detail = "Leibniz failed";
          return false;
        }
      }
    }
    // Lemma dife divisibility on 100 random inputs.
    for (int trial = 0; trial < 100; ++trial) {
      int m = (int)rng.uniform(1, 3);
      int i = (int)rng.uniform(1, m);
      long n = rng.uniform((long)i, (long)i + 3);
      Poly t = Poly::variable("t");
      Poly g;
      for (int j = 0; j < 3; ++j) g += t.pow(rng.uniform(0, 3)) * Rational(rng.uniform(-3, 3));
      if (g.is_zero()) g = Poly::constant(1);
      HsElem<RatFunc> d = hs_derive(RatFunc::from_poly(t.pow(n) * g, "t"), i, m);
      for (const auto& [mono, coeff] : d.terms())
        if (coeff.ord_at(PointP1::affine(0)) < n - i) {
          detail = "dife divisibility failed";
          return false;
        }
    }
    // Functoriality on 100 effective triples.
    HsElem<Poly> wz = parse_hs("d1(q)*d2(p) - d1(p)*d2(q)", 2, {"p", "q"});
    long functorial = 0;
    while (functorial < 100) {
      Poly t = Poly::variable("t");
      auto rand_poly = [&](long maxdeg) {
        Poly f;
        for (int i = 0; i < 3; ++i)
          f += t.pow(rng.uniform(0, maxdeg)) * Rational(rng.uniform(-3, 3));
        return f;
      };
      Poly xd = rand_poly(2), yd = rand_poly(2);
      if (xd.is_zero()) xd = Poly::constant(1);
      if (yd.is_zero()) yd = Poly::constant(1);
      RatFunc x(rand_poly(3), xd, "t");
      RatFunc y(rand_poly(3), yd, "t");
      Poly rn = rand_poly(3), rd = rand_poly(2);
      if (rd.is_zero()) rd = Poly::constant(1);
      if (rn.is_zero() || (rn * rd.derivative("t") - rd * rn.derivative("t")).is_zero()) continue;
      RatFunc rho(rn, rd, "t");
      std::map<std::string, RatFunc> subs{{"p", x}, {"q", y}};
      std::map<std::string, RatFunc> subs_composed;
      for (const auto& [k, v] : subs) subs_composed.emplace(k, v.compose(rho));
      if (!(hs_pullback(wz, subs_composed) == hs_compose(hs_pullback(wz, subs), rho))) {
        detail = "functoriality failed";
        return false;
      }
      ++functorial;
    }
    // Height identity and truncation comparison on 100 profiles.
    for (int trial = 0; trial < 100; ++trial) {
      RationalMap phi = random_map(rng, rng.uniform(1, 5));
      Poly line = random_line_arrangement(rng, 1)[0];
      OrderRow row;
      try {
        row = vanishing_orders(phi, line);
      } catch (const CalcError&) {
        continue;
      }
      long total = 0;
      for (const auto& [pt, c] : row.rational_points) total += c;
      for (const auto& [e, c] : row.irrational_blocks) total += e * c;
      if (total != phi.degree) {
        detail = "height identity failed";
        return false;
      }
      for (long mm = 2; mm <= 3; ++mm)
        if (truncated_count(row, mm) > mm * truncated_count(row, 1)) {
          detail = "truncation comparison failed";
          return false;
        }
    }
    // Proposition eio multiplicativity on 100 effective trials.
    long eio = 0;
    while (eio < 100) {
      RationalMap phi = random_map(rng, rng.uniform(1, 3));
      Poly s = Poly::variable("s"), t = Poly::variable("t");
      long e = rng.uniform(1, 3);
      Poly r0, r1;
      for (long j = 0; j <= e; ++j) {
        r0 += s.pow(j) * t.pow(e - j) * Rational(rng.uniform(-3, 3));
        r1 += s.pow(j) * t.pow(e - j) * Rational(rng.uniform(-3, 3));
      }
      if (r0.is_zero() || r1.is_zero() || !gcd(r0, r1).is_constant()) continue;
      PointP1 q = PointP1::affine(Rational(rng.uniform(-3, 3)));
      Poly line = random_line_arrangement(rng, 1)[0];
      std::map<std::string, Rational> at{{"s", q.s}, {"t", q.t}};
      Rational a0 = r0.eval(at), a1 = r1.eval(at);
      if (a0 == 0 && a1 == 0) continue;
      try {
        RationalMap comp = compose_map(phi, r0, r1);
        OrderRow composed = vanishing_orders(comp, line);
        OrderRow base = vanishing_orders(phi, line);
        if (order_at(composed, q) !=
            ramification_factor(r0, r1, q) * order_at(base, PointP1(a0, a1))) {
          detail = "eio multiplicativity failed";
          return false;
        }
      } catch (const CalcError&) {
        continue;
      }
      ++eio;
    }
    return true;
  });

  // 10. Campana fixture and the structured absence search.
  criterion(10, "campana fixture + absence search", 120.0, [&](std::string& detail) {
    std::vector<Rational> eps(17, Rational(1, 2));
    PlaneDivisor d = make_divisor(fam.lines(), true);
    if (!is_campana(fam.envelope_param, d, eps)) {
      detail = "envelope not campana";
      return false;
    }
    CampanaWitness witness;
    witness.multiple = 2;
    witness.deg_ample = 1;
    witness.deg_effective = 8;
    Poly e = Poly::constant(1);
    for (int i = 0; i < 8; ++i) e = e * fam.line_at(fam.parameters[i]);
    witness.effective = e;
    CampanaReport rep = campana_check(quad, fam, eps, witness, fam.envelope_param);
    if (!rep.campana || !rep.in_z || !rep.ok) {
      detail = "fixture check failed: " + rep.notes;
      return false;
    }
    CampanaSearchResult search = campana_conic_search(quad, fam, eps, 4242, 120);
    std::ostringstream report;
    report << "absence report: " << search.candidates << " structured conic candidates, "
           << search.campana_found << " Campana, " << search.outside_z << " outside Z, envelope "
           << (search.envelope_recovered ? "recovered" : "missed");
    std::cout << "  " << report.str() << "\n";
    detail = report.str();
    return search.outside_z == 0 && search.envelope_recovered && search.candidates > 0;
  });

  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
