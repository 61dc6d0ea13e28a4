#include "omega/harness.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace omega {

// ---------------------------------------------------------------------------
// RNG

static uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(uint64_t seed, uint64_t trial) {
  return Rng(splitmix64(seed ^ splitmix64(trial + 1)));
}

long Rng::uniform(long lo, long hi) {
  if (lo > hi) fail(Errc::Internal, "bad uniform bounds");
  uint64_t span = (uint64_t)(hi - lo) + 1;
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return lo + (long)(x % span);
}

Rational Rng::nonzero_small(long bound) {
  long v = 0;
  while (v == 0) v = uniform(-bound, bound);
  return Rational(v);
}

Rational Rng::small_rational(long num_bound, long den_bound) {
  Rational r(uniform(-num_bound, num_bound), uniform(1, den_bound));
  r.canonicalize();
  return r;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::VACUOUS: return "VACUOUS";
    case Verdict::FORCED_AND_CONFIRMED: return "FORCED_AND_CONFIRMED";
    case Verdict::CONTRAPOSITIVE_OK: return "CONTRAPOSITIVE_OK";
    case Verdict::VIOLATION: return "VIOLATION";
  }
  return "?";
}

static bool proportionalish(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.primitive_normalized() == b.primitive_normalized();
}

// ---------------------------------------------------------------------------
// Height-inequality report

ScenarioReport main_inequality_report(const FormOnP2& w,
                                      const std::vector<IntegralComponent>& comps,
                                      const RationalMap& phi) {
  ScenarioReport rep;
  rep.scenario = "main";
  std::vector<Poly> eqs;
  for (const auto& c : comps) {
    if (!image_in_curve(c.param, c.equation))
      fail(Errc::ComponentNotIntegral, "parametrization does not land in the component");
    if (!is_integral_parametrized(w, c.param))
      fail(Errc::ComponentNotIntegral, "component is not omega-integral: " + c.equation.str());
    eqs.push_back(c.equation);
  }
  bool all_lines = std::all_of(eqs.begin(), eqs.end(),
                               [](const Poly& g) { return g.total_degree() == 1; });
  PlaneDivisor d;
  if (all_lines && lines_no_three_concurrent(eqs)) {
    d = make_divisor(eqs, true);
    rep.snc = "VerifiedLines";
  } else {
    d = make_divisor(eqs, false);
    rep.snc = "Assumed";
  }
  const long m = w.order();
  long h_d = height(phi, d);  // throws ImageInDivisor when phi lands in supp(D)
  rep.lhs = Rational(h_d - w.twist() * phi.degree);
  long rhs = 0;  // + 2r*max(0, g-1), zero here: the source curve is P^1
  for (const auto& c : comps) {
    long nv = truncated_count(vanishing_orders(phi, c.equation), m);
    rep.per_component.push_back(nv);
    rhs += nv;
  }
  rep.rhs = Rational(rhs);
  rep.integral = is_integral_parametrized(w, phi);
  if (rep.lhs > rep.rhs)
    rep.verdict = rep.integral ? Verdict::FORCED_AND_CONFIRMED : Verdict::VIOLATION;
  else
    rep.verdict = rep.integral ? Verdict::VACUOUS : Verdict::CONTRAPOSITIVE_OK;
  return rep;
}

// ---------------------------------------------------------------------------
// Local vanishing-order bound at high-contact points

DosvarReport dosvar_order_check(const FormOnP2& w, const std::vector<IntegralComponent>& comps,
                                const RationalMap& phi, const PointP1& q) {
  DosvarReport rep;
  if (comps.empty()) fail(Errc::HypothesisFailed, "no components supplied");
  const long m = w.order();
  std::vector<Rational> p = eval_map(phi, q);
  std::map<std::string, Rational> at{{"X", p[0]}, {"Y", p[1]}, {"Z", p[2]}};
  for (const auto& c : comps) {
    if (!image_in_curve(c.param, c.equation) || !is_integral_parametrized(w, c.param))
      fail(Errc::ComponentNotIntegral, "component is not omega-integral: " + c.equation.str());
    if (c.equation.eval(at) != 0)
      fail(Errc::HypothesisFailed, "component does not pass through phi(Q)");
  }
  // SNC at P: on a surface at most two components meet at a point, with
  // independent differentials; certification here covers lines.
  if (comps.size() > 2) fail(Errc::HypothesisFailed, "more than two components through one point");
  if (comps.size() == 2) {
    if (comps[0].equation.total_degree() != 1 || comps[1].equation.total_degree() != 1)
      fail(Errc::HypothesisFailed, "SNC certification beyond lines is not available");
    if (proportionalish(comps[0].equation, comps[1].equation))
      fail(Errc::HypothesisFailed, "components coincide");
  }
  long bound = 0;
  for (const auto& c : comps) {
    long ci = order_at(vanishing_orders(phi, c.equation), q);
    rep.orders.push_back(ci);
    if (ci <= m)
      fail(Errc::HypothesisFailed,
           "contact order " + std::to_string(ci) + " is not above m = " + std::to_string(m));
    bound += ci;
  }
  bound -= (long)comps.size() * m;
  rep.bound = bound;
  auto chart = chart_containing(p);
  if (!chart) fail(Errc::Internal, "point outside every chart");
  rep.actual = vanishing_order(pullback_on_chart(w, phi, *chart), q);
  rep.ok = !rep.actual.has_value() || *rep.actual >= bound;
  return rep;
}

// ---------------------------------------------------------------------------
// Noguchi-Wang

NWReport noguchi_wang_check(const std::vector<Poly>& lines, const RationalMap& phi) {
  NWReport rep;
  PlaneDivisor d = make_divisor(lines, true);
  if (image_is_line(phi)) fail(Errc::ImageIsLine, "the check requires a non-line image");
  rep.q = (long)lines.size();
  rep.lhs = Rational((rep.q - 3) * phi.degree);
  long rhs = 0;
  for (const auto& c : d.components) {
    long nv = truncated_count(vanishing_orders(phi, c.equation), 2);
    rep.per_line.push_back(nv);
    rhs += nv;
  }
  rep.rhs = Rational(rhs);
  rep.ok = rep.lhs <= rep.rhs;
  return rep;
}

// ---------------------------------------------------------------------------
// Quadratic family

static Vec linear_coeffs(const Poly& l) {
  Vec r(3, Rational(0));
  const std::vector<std::string> names{"X", "Y", "Z"};
  for (const auto& [e, c] : l.terms())
    for (size_t i = 0; i < l.vars().size(); ++i) {
      if (e[i] != 1) continue;
      for (int j = 0; j < 3; ++j)
        if (l.vars()[i] == names[j]) r[j] = c;
    }
  return r;
}

QuadFamily make_quad_family(const Poly& a, const Poly& b, const Poly& c,
                            std::vector<PointP1> parameters) {
  for (const Poly* l : {&a, &b, &c})
    if (l->total_degree() != 1 || !l->is_homogeneous())
      fail(Errc::DegenerateFamily, "family coefficients must be linear forms");
  QuadFamily fam;
  fam.a = a;
  fam.b = b;
  fam.c = c;
  fam.coeff = {linear_coeffs(a), linear_coeffs(b), linear_coeffs(c)};
  if (det(fam.coeff) == 0)
    fail(Errc::DegenerateFamily, "the dual conic is singular (concurrent or degenerate family)");
  for (size_t i = 0; i < parameters.size(); ++i)
    for (size_t j = i + 1; j < parameters.size(); ++j)
      if (parameters[i] == parameters[j]) fail(Errc::DegenerateFamily, "repeated family parameter");
  fam.parameters = std::move(parameters);
  fam.envelope = (b * b - a * c * Rational(4)).primitive_normalized();
  // In psi = (a,b,c) coordinates the envelope is psi1^2 = 4 psi0 psi2 with
  // parametrization (s^2, 2st, t^2); pull back through the inverse matrix.
  Mat inv = inverse(fam.coeff);
  Poly s = Poly::variable("s"), t = Poly::variable("t");
  std::vector<Poly> ver{s * s, s * t * Rational(2), t * t};
  std::vector<Poly> comp(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) comp[i] += ver[j] * inv[i][j];
  fam.envelope_param = validate_map(comp[0], comp[1], comp[2]);
  if (!image_in_curve(fam.envelope_param, fam.envelope))
    fail(Errc::Internal, "envelope parametrization is off the envelope");
  return fam;
}

Poly QuadFamily::line_at(const PointP1& p) const {
  return (a * (p.s * p.s) + b * (p.s * p.t) + c * (p.t * p.t)).primitive_normalized();
}

RationalMap QuadFamily::line_param(const PointP1& p) const { return parametrize_line(line_at(p)); }

std::vector<Rational> QuadFamily::tangency_point(const PointP1& p) const {
  // The member at [s0:t0] touches the envelope at parameter [t0:-s0].
  return eval_map(envelope_param, PointP1(p.t, -p.s));
}

std::vector<Poly> QuadFamily::lines() const {
  std::vector<Poly> out;
  for (const auto& p : parameters) out.push_back(line_at(p));
  return out;
}

ExceptionalSet exceptional_set_quadfamily(const QuadFamily& fam) {
  ExceptionalSet z;
  z.envelope = fam.envelope;
  z.components.push_back(fam.envelope);
  for (const auto& l : fam.lines()) z.components.push_back(l);
  return z;
}

Rational sigma_p2(long deg_ample, long deg_l) {
  if (deg_ample <= 0) fail(Errc::BadConfig, "sigma needs an ample sheaf");
  if (deg_l <= 0) return Rational(0);
  Rational r(deg_l, deg_ample);
  r.canonicalize();
  return r;
}

QuadReport quad_family_scenario(const QuadFamily& fam, const Rational& eps,
                                const RationalMap& phi) {
  QuadReport rep;
  long q = (long)fam.parameters.size();
  if (eps <= 0 || Rational(q) * eps <= 4)
    fail(Errc::BadConfig, "the family must satisfy q > 4/eps");
  std::vector<Poly> lines = fam.lines();
  bool in_line = false;
  for (const auto& l : lines) in_line = in_line || image_in_curve(phi, l);
  bool in_envelope = image_in_curve(phi, fam.envelope);
  if (in_line || in_envelope) {
    rep.in_exceptional = true;
    rep.notes = in_envelope ? "image in Y (the envelope)" : "image in a member line";
    if (in_envelope && !in_line) {
      // Diagnostic would-be inequality for the envelope.
      long h = 0, nsum = 0;
      for (const auto& l : lines) {
        OrderRow row = vanishing_orders(phi, l);
        h += row.total_degree;
        nsum += truncated_count(row, 1);
      }
      rep.lhs = (Rational(1) - eps) * Rational(h);
      rep.rhs = Rational(nsum);
    }
    rep.ok = true;  // membership reported; the inequality is not asserted
    return rep;
  }
  long h = 0, nsum = 0;
  for (const auto& l : lines) {
    OrderRow row = vanishing_orders(phi, l);
    h += row.total_degree;
    nsum += truncated_count(row, 1);
  }
  rep.lhs = (Rational(1) - eps) * Rational(h);
  rep.rhs = Rational(nsum);
  rep.ok = rep.lhs < rep.rhs;
  return rep;
}

// ---------------------------------------------------------------------------
// Campana

bool is_campana(const RationalMap& phi, const PlaneDivisor& d, const std::vector<Rational>& eps) {
  if (eps.size() != d.components.size()) fail(Errc::BadConfig, "one epsilon per component");
  for (size_t j = 0; j < d.components.size(); ++j) {
    if (eps[j] <= 0 || eps[j] > 1) fail(Errc::BadConfig, "epsilon_j must lie in (0,1]");
    OrderRow row = vanishing_orders(phi, d.components[j].equation);
    for (const auto& [pt, c] : row.rational_points)
      if (Rational(c) * eps[j] < 1) return false;
    for (const auto& [deg, c] : row.irrational_blocks)
      if (Rational(c) * eps[j] < 1) return false;
  }
  return true;
}

CampanaReport campana_check(const FormOnP2& w, const QuadFamily& fam,
                            const std::vector<Rational>& eps, const CampanaWitness& witness,
                            const RationalMap& phi) {
  CampanaReport rep;
  const long m = w.order();
  const long q = (long)fam.parameters.size();
  if ((long)eps.size() != q) fail(Errc::BadConfig, "one epsilon per member line");
  for (const auto& e : eps)
    if (!(e > 0) || !(e * Rational(m) < 1))
      fail(Errc::WitnessInvalid, "epsilon_j must satisfy 0 < epsilon_j < 1/m");
  if (witness.deg_effective < 0) fail(Errc::WitnessInvalid, "E is not effective");
  if (witness.deg_ample <= 0) fail(Errc::WitnessInvalid, "A must be ample (positive degree)");
  if (witness.multiple < 1) fail(Errc::WitnessInvalid, "M must be a positive integer");
  // M * (-deg L + sum_j (1 - m*eps_j) deg D_j) = deg A + deg E, lines have deg 1.
  Rational lhs = Rational(-w.twist());
  for (const auto& e : eps) lhs += Rational(1) - Rational(m) * e;
  lhs *= Rational(witness.multiple);
  if (lhs != Rational(witness.deg_ample + witness.deg_effective))
    fail(Errc::WitnessInvalid, "witness degrees do not match the Kodaira decomposition");
  if (witness.deg_effective > 0) {
    long dd;
    if (witness.effective.is_zero() || !witness.effective.is_homogeneous(&dd) ||
        dd != witness.deg_effective)
      fail(Errc::WitnessInvalid, "supp(E) polynomial does not match deg E");
  }
  PlaneDivisor d = make_divisor(fam.lines(), true);
  rep.campana = is_campana(phi, d, eps);
  if (!rep.campana) fail(Errc::NotCampana, "the map is not a Campana curve for these weights");
  // Z = Delta(omega) u supp(E) u supp(D) u V_{omega,D}; for the quadratic
  // family the omega-integral curves through D cap Delta are the envelope and
  // the member lines, so the listed components already exhaust V.
  std::vector<Poly> zcomps{discriminant_locus(w).global};
  for (const auto& l : fam.lines()) zcomps.push_back(l);
  if (witness.deg_effective > 0) zcomps.push_back(witness.effective);
  for (const auto& zc : zcomps)
    if (image_in_curve(phi, zc)) {
      rep.in_z = true;
      break;
    }
  rep.ok = !rep.campana || rep.in_z;
  rep.notes = rep.in_z ? "image inside Z" : "image outside Z";
  return rep;
}

static bool rational_square_root(const Rational& x, Rational* root) {
  if (x < 0) return false;
  Integer n = x.get_num(), d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return false;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  *root = Rational(rn) / Rational(rd);
  return true;
}

// Conic coefficient vector order: X^2, Y^2, Z^2, XY, XZ, YZ.
static Poly conic_from_vec(const Vec& v) {
  Poly X = Poly::variable("X"), Y = Poly::variable("Y"), Z = Poly::variable("Z");
  return X * X * v[0] + Y * Y * v[1] + Z * Z * v[2] + X * Y * v[3] + X * Z * v[4] + Y * Z * v[5];
}

// Rows forcing grad C(p) parallel to n (tangency to the line with normal n at p).
static void tangency_rows(const std::vector<Rational>& p, const Vec& n, Mat* rows) {
  auto grad_row = [&](int axis) {
    Vec r(6, Rational(0));
    if (axis == 0) {
      r[0] = 2 * p[0];
      r[3] = p[1];
      r[4] = p[2];
    } else if (axis == 1) {
      r[1] = 2 * p[1];
      r[3] = p[0];
      r[5] = p[2];
    } else {
      r[2] = 2 * p[2];
      r[4] = p[0];
      r[5] = p[1];
    }
    return r;
  };
  Vec gx = grad_row(0), gy = grad_row(1), gz = grad_row(2);
  auto combo = [](const Rational& c1, const Vec& v1, const Rational& c2, const Vec& v2) {
    Vec r(6);
    for (int i = 0; i < 6; ++i) r[i] = c1 * v1[i] - c2 * v2[i];
    return r;
  };
  rows->push_back(combo(n[2], gy, n[1], gz));
  rows->push_back(combo(n[0], gz, n[2], gx));
  rows->push_back(combo(n[1], gx, n[0], gy));
}

CampanaSearchResult campana_conic_search(const FormOnP2& w, const QuadFamily& fam,
                                         const std::vector<Rational>& eps, uint64_t seed,
                                         long random_line_trials) {
  CampanaSearchResult res;
  PlaneDivisor d = make_divisor(fam.lines(), true);
  Poly delta = discriminant_locus(w).global;
  auto in_z = [&](const RationalMap& phi) {
    if (image_in_curve(phi, delta)) return true;
    for (const auto& l : fam.lines())
      if (image_in_curve(phi, l)) return true;
    return false;
  };
  const std::vector<PointP1>& ps = fam.parameters;
  if (ps.size() < 3) fail(Errc::BadConfig, "need at least three member lines");
  std::vector<std::array<size_t, 3>> triples;
  size_t reach = std::min<size_t>(ps.size(), 4);
  for (size_t a = 0; a < reach; ++a)
    for (size_t b = a + 1; b < reach; ++b)
      for (size_t c = b + 1; c < reach; ++c) triples.push_back({a, b, c});
  std::vector<Rational> grid{Rational(0), Rational(1), Rational(-1), Rational(2),
                             Rational(-2), Rational(1, 2)};
  for (const auto& tri : triples) {
    const PointP1 &l1 = ps[tri[0]], &l2 = ps[tri[1]], &l3 = ps[tri[2]];
    RationalMap pm1 = fam.line_param(l1);
    RationalMap pm2 = fam.line_param(l2);
    RationalMap pm3 = fam.line_param(l3);
    Vec n1 = linear_coeffs(fam.line_at(l1));
    Vec n2 = linear_coeffs(fam.line_at(l2));
    std::vector<std::vector<Rational>> pts1{fam.tangency_point(l1)};
    std::vector<std::vector<Rational>> pts2{fam.tangency_point(l2)};
    for (const auto& g : grid) {
      pts1.push_back(eval_map(pm1, PointP1::affine(g)));
      pts2.push_back(eval_map(pm2, PointP1::affine(g)));
    }
    for (const auto& p1 : pts1)
      for (const auto& p2 : pts2) {
        Mat rows;
        tangency_rows(p1, n1, &rows);
        tangency_rows(p2, n2, &rows);
        std::vector<Vec> pencil = kernel(rows);
        if (pencil.size() != 2) continue;
        Poly c1 = conic_from_vec(pencil[0]);
        Poly c2 = conic_from_vec(pencil[1]);
        auto restrict3 = [&](const Poly& cc) {
          return cc.substitute({{"X", pm3.F0}, {"Y", pm3.F1}, {"Z", pm3.F2}});
        };
        Poly r1 = restrict3(c1), r2 = restrict3(c2);
        auto coeffs_of = [&](const Poly& bform) {
          std::vector<Rational> v(3, Rational(0));
          for (const auto& [e, coef] : bform.terms()) {
            long es = 0;
            for (size_t i = 0; i < bform.vars().size(); ++i)
              if (bform.vars()[i] == "s") es = e[i];
            v[es] = coef;
          }
          return v;
        };
        std::vector<Rational> A = coeffs_of(r1), B = coeffs_of(r2);
        Rational qa = A[1] * A[1] - 4 * A[0] * A[2];
        Rational qb = 2 * A[1] * B[1] - 4 * (A[0] * B[2] + A[2] * B[0]);
        Rational qc = B[1] * B[1] - 4 * B[0] * B[2];
        std::vector<std::pair<Rational, Rational>> sols;
        if (qa == 0) {
          sols.emplace_back(1, 0);
          if (qb != 0) sols.emplace_back(-qc / qb, 1);
        } else {
          Rational disc = qb * qb - 4 * qa * qc, root;
          if (rational_square_root(disc, &root)) {
            sols.emplace_back((-qb + root) / (2 * qa), 1);
            sols.emplace_back((-qb - root) / (2 * qa), 1);
          }
        }
        for (const auto& [alpha, beta] : sols) {
          Vec v(6);
          for (int i = 0; i < 6; ++i) v[i] = alpha * pencil[0][i] + beta * pencil[1][i];
          Poly conic = conic_from_vec(v);
          if (conic.is_zero() || det(conic_matrix(conic)) == 0) continue;
          RationalMap cm;
          try {
            cm = parametrize_conic(conic, p1);
          } catch (const CalcError&) {
            continue;
          }
          ++res.candidates;
          bool campana;
          try {
            campana = is_campana(cm, d, eps);
          } catch (const CalcError&) {
            continue;
          }
          if (!campana) continue;
          ++res.campana_found;
          if (proportionalish(conic, fam.envelope)) res.envelope_recovered = true;
          if (!in_z(cm)) {
            ++res.outside_z;
            res.notes.push_back("Campana conic outside Z: " + conic.primitive_normalized().str());
          }
        }
      }
  }
  // Seeded sweep over random lines and conics.
  Rng rng(seed);
  for (long i = 0; i < random_line_trials; ++i) {
    RationalMap phi = random_map(rng, 1 + (i % 2));
    bool campana;
    try {
      campana = is_campana(phi, d, eps);
    } catch (const CalcError&) {
      continue;
    }
    if (campana && !in_z(phi)) {
      ++res.outside_z;
      res.notes.push_back("random Campana curve outside Z: " + phi.str());
    }
  }
  if (!res.envelope_recovered)
    res.notes.push_back("warning: structured search did not recover the envelope");
  return res;
}

// ---------------------------------------------------------------------------
// Fuzz campaigns

CampaignKind campaign_kind_from(const std::string& name) {
  if (name == "wronskian-main") return CampaignKind::WronskianMain;
  if (name == "quad-main") return CampaignKind::QuadMain;
  if (name == "noguchi-wang") return CampaignKind::NoguchiWang;
  if (name == "dosvar") return CampaignKind::Dosvar;
  if (name == "quad2") return CampaignKind::QuadTwo;
  fail(Errc::BadConfig, "unknown campaign kind '" + name + "'");
}

const char* campaign_kind_name(CampaignKind k) {
  switch (k) {
    case CampaignKind::WronskianMain: return "wronskian-main";
    case CampaignKind::QuadMain: return "quad-main";
    case CampaignKind::NoguchiWang: return "noguchi-wang";
    case CampaignKind::Dosvar: return "dosvar";
    case CampaignKind::QuadTwo: return "quad2";
  }
  return "?";
}

RationalMap random_map(Rng& rng, long degree) {
  Poly s = Poly::variable("s"), t = Poly::variable("t");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Poly> f(3);
    for (int i = 0; i < 3; ++i)
      for (long j = 0; j <= degree; ++j)
        f[i] += s.pow(j) * t.pow(degree - j) * Rational(rng.uniform(-9, 9));
    try {
      std::string warning;
      RationalMap m = validate_map(f[0], f[1], f[2], &warning);
      if (!warning.empty() || m.degree != degree) continue;
      return m;
    } catch (const CalcError&) {
      continue;
    }
  }
  fail(Errc::Internal, "random map sampling failed");
}

RationalMap random_nonline_map(Rng& rng, long degree) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RationalMap m = random_map(rng, degree);
    if (!image_is_line(m)) return m;
  }
  fail(Errc::Internal, "random non-line sampling failed");
}

std::vector<Poly> random_line_arrangement(Rng& rng, long q) {
  Poly X = Poly::variable("X"), Y = Poly::variable("Y"), Z = Poly::variable("Z");
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<Poly> lines;
    for (long i = 0; i < q; ++i) {
      Poly l;
      while (l.is_zero())
        l = X * Rational(rng.uniform(-9, 9)) + Y * Rational(rng.uniform(-9, 9)) +
            Z * Rational(rng.uniform(-9, 9));
      lines.push_back(l.primitive_normalized());
    }
    bool distinct = true;
    for (size_t i = 0; i < lines.size() && distinct; ++i)
      for (size_t j = i + 1; j < lines.size() && distinct; ++j)
        if (lines[i] == lines[j]) distinct = false;
    if (!distinct) continue;
    if (!lines_no_three_concurrent(lines)) continue;
    return lines;
  }
  fail(Errc::Internal, "line arrangement sampling failed");
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

struct CsvWriter {
  std::ostringstream os;
  long rows = 0;
  CsvWriter() { os << "trial,scenario,map_degree,lhs,rhs,verdict,integral,notes\r\n"; }
  void row(long trial, const std::string& scenario, long degree, const Rational& lhs,
           const Rational& rhs, const std::string& verdict, bool integral,
           const std::string& notes) {
    os << trial << "," << scenario << "," << degree << "," << to_string(lhs) << ","
       << to_string(rhs) << "," << verdict << "," << (integral ? "yes" : "no") << ","
       << csv_escape(notes) << "\r\n";
    ++rows;
  }
};

struct DosvarTrial {
  RationalMap phi;
  std::vector<IntegralComponent> comps;
  PointP1 q;
};

Poly homogenize_param(const std::vector<Rational>& coeffs, long degree) {
  // coeffs[i] multiplies tau^i with tau = s/t; homogeneous of the given degree.
  Poly s = Poly::variable("s"), t = Poly::variable("t");
  Poly out;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) out += s.pow(i) * t.pow(degree - i) * coeffs[i];
  return out;
}

std::optional<DosvarTrial> make_dosvar_trial(Rng& rng, const FormOnP2& w, const QuadFamily* fam,
                                             bool quad_mode) {
  long k = rng.uniform(1, 2);
  const long m = w.order();
  std::vector<Poly> lines;
  std::vector<RationalMap> params;
  Vec p(3);
  if (quad_mode) {
    const auto& ps = fam->parameters;
    size_t i = (size_t)rng.uniform(0, (long)ps.size() - 1);
    lines.push_back(fam->line_at(ps[i]));
    params.push_back(fam->line_param(ps[i]));
    if (k == 2) {
      size_t j = (size_t)rng.uniform(0, (long)ps.size() - 1);
      if (i == j) return std::nullopt;
      lines.push_back(fam->line_at(ps[j]));
      params.push_back(fam->line_param(ps[j]));
      Vec n1 = linear_coeffs(lines[0]);
      Vec n2 = linear_coeffs(lines[1]);
      std::vector<Vec> ker = kernel({n1, n2});
      if (ker.size() != 1) return std::nullopt;
      p = ker[0];
    } else {
      p = eval_map(params[0], PointP1::affine(Rational(rng.uniform(-4, 4))));
    }
  } else {
    p = {Rational(rng.uniform(-4, 4)), Rational(rng.uniform(-4, 4)), Rational(1)};
    std::vector<Vec> ker = kernel({p});
    if (ker.size() != 2) return std::nullopt;
    for (long i = 0; i < k; ++i) {
      Poly l;
      for (int attempt = 0; attempt < 50 && l.is_zero(); ++attempt) {
        Rational alpha(rng.uniform(-4, 4)), beta(rng.uniform(-4, 4));
        if (alpha == 0 && beta == 0) continue;
        Poly cand = Poly::variable("X") * (alpha * ker[0][0] + beta * ker[1][0]) +
                    Poly::variable("Y") * (alpha * ker[0][1] + beta * ker[1][1]) +
                    Poly::variable("Z") * (alpha * ker[0][2] + beta * ker[1][2]);
        if (cand.is_zero()) continue;
        cand = cand.primitive_normalized();
        bool dup = false;
        for (const auto& prev : lines) dup = dup || prev == cand;
        if (!dup) l = cand;
      }
      if (l.is_zero()) return std::nullopt;
      lines.push_back(l);
      params.push_back(parametrize_line(l));
    }
  }
  if (p[2] == 0) return std::nullopt;  // keep phi(Q) affine on U_Z
  Rational px = p[0] / p[2], py = p[1] / p[2];
  std::vector<long> cs;
  for (long i = 0; i < k; ++i) cs.push_back(rng.uniform(m + 1, m + 3));
  std::sort(cs.begin(), cs.end());
  if (k == 2 && cs[0] == cs[1]) cs[1] += 1;
  std::vector<Vec> normals;
  for (const auto& l : lines) {
    Vec n3 = linear_coeffs(l);
    normals.push_back({n3[0], n3[1]});
  }
  auto dir_of = [&](const Vec& n) { return Vec{-n[1], n[0]}; };
  long top = (k == 1) ? cs[0] + 1 : cs[1];
  std::vector<Rational> xs(top + 1, Rational(0)), ys(top + 1, Rational(0));
  xs[0] = px;
  ys[0] = py;
  if (k == 1) {
    Vec dir = dir_of(normals[0]);
    Rational speed = rng.nonzero_small(3);
    xs[1] += dir[0] * speed;
    ys[1] += dir[1] * speed;
    Rational d0x(rng.uniform(-3, 3)), d0y(rng.uniform(-3, 3));
    if (normals[0][0] * d0x + normals[0][1] * d0y == 0) {
      d0x += normals[0][0];
      d0y += normals[0][1];
    }
    xs[cs[0]] += d0x;
    ys[cs[0]] += d0y;
    xs[top] += Rational(rng.uniform(-2, 2));
    ys[top] += Rational(rng.uniform(-2, 2));
    // a nonzero top coefficient keeps the homogenized triple coprime
    if (xs[top] == 0 && ys[top] == 0) ys[top] = 1;
  } else {
    Vec w1 = dir_of(normals[1]);  // annihilated by ell_2, transversal to ell_1
    Vec w2 = dir_of(normals[0]);
    xs[cs[0]] += w1[0];
    ys[cs[0]] += w1[1];
    xs[cs[1]] += w2[0];
    ys[cs[1]] += w2[1];
  }
  long degree = top;
  Poly f0 = homogenize_param(xs, degree);
  Poly f1 = homogenize_param(ys, degree);
  Poly f2 = Poly::variable("t").pow(degree);
  DosvarTrial trial;
  try {
    std::string warning;
    trial.phi = validate_map(f0, f1, f2, &warning);
    if (!warning.empty()) return std::nullopt;
  } catch (const CalcError&) {
    return std::nullopt;
  }
  for (long i = 0; i < k; ++i) trial.comps.push_back({lines[i], params[i]});
  trial.q = PointP1::affine(0);
  return trial;
}

}  // namespace

FuzzOutcome fuzz_campaign(const FuzzConfig& cfg, const FuzzContext& ctx) {
  if (cfg.trials < 0) fail(Errc::BadConfig, "trials must be >= 0");
  auto need = [&](const void* p, const char* what) {
    if (!p) fail(Errc::BadConfig, std::string("campaign needs ") + what);
  };
  switch (cfg.kind) {
    case CampaignKind::WronskianMain: need(ctx.wronskian, "the Wronskian form"); break;
    case CampaignKind::QuadMain:
      need(ctx.quad, "the quadratic-family form");
      need(ctx.family, "the quadratic family");
      break;
    case CampaignKind::NoguchiWang: break;
    case CampaignKind::Dosvar:
      need(ctx.wronskian, "the Wronskian form");
      break;  // quad form + family optional: they enable the mixed mode
    case CampaignKind::QuadTwo:
      need(ctx.quad, "the quadratic-family form");
      need(ctx.family, "the quadratic family");
      break;
  }
  CsvWriter csv;
  long violations = 0;
  for (long trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = Rng::for_trial(cfg.seed, (uint64_t)trial);
    switch (cfg.kind) {
      case CampaignKind::WronskianMain: {
        long degree = rng.uniform(1, std::max<long>(1, cfg.max_degree));
        RationalMap phi = random_map(rng, degree);
        long q = rng.uniform(4, 6);
        std::vector<Poly> lines = random_line_arrangement(rng, q);
        std::vector<IntegralComponent> comps;
        for (const auto& l : lines) comps.push_back({l, parametrize_line(l)});
        ScenarioReport rep;
        try {
          rep = main_inequality_report(*ctx.wronskian, comps, phi);
        } catch (const CalcError& e) {
          if (e.code() == Errc::ImageInDivisor) {
            csv.row(trial, "wronskian-main", degree, Rational(0), Rational(0), "SKIP", false,
                    "image in divisor");
            continue;
          }
          throw;
        }
        if (rep.verdict == Verdict::VIOLATION) ++violations;
        csv.row(trial, "wronskian-main", degree, rep.lhs, rep.rhs, verdict_name(rep.verdict),
                rep.integral, rep.snc);
        break;
      }
      case CampaignKind::QuadMain: {
        long degree = rng.uniform(1, std::max<long>(1, cfg.max_degree));
        RationalMap phi =
            (rng.uniform(0, 7) == 0) ? ctx.family->envelope_param : random_map(rng, degree);
        long q = rng.uniform(4, std::min<long>(9, (long)ctx.family->parameters.size()));
        std::vector<IntegralComponent> comps;
        std::vector<size_t> idx(ctx.family->parameters.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (long i = 0; i < q; ++i) {
          size_t pick = (size_t)rng.uniform(i, (long)idx.size() - 1);
          std::swap(idx[i], idx[pick]);
          const PointP1& par = ctx.family->parameters[idx[i]];
          comps.push_back({ctx.family->line_at(par), ctx.family->line_param(par)});
        }
        ScenarioReport rep;
        try {
          rep = main_inequality_report(*ctx.quad, comps, phi);
        } catch (const CalcError& e) {
          if (e.code() == Errc::ImageInDivisor) {
            csv.row(trial, "quad-main", phi.degree, Rational(0), Rational(0), "SKIP", false,
                    "image in divisor");
            continue;
          }
          throw;
        }
        if (rep.verdict == Verdict::VIOLATION) ++violations;
        csv.row(trial, "quad-main", phi.degree, rep.lhs, rep.rhs, verdict_name(rep.verdict),
                rep.integral, rep.snc);
        break;
      }
      case CampaignKind::NoguchiWang: {
        long degree = rng.uniform(2, std::max<long>(2, cfg.max_degree));
        RationalMap phi = random_nonline_map(rng, degree);
        long q = rng.uniform(4, 8);
        std::vector<Poly> lines = random_line_arrangement(rng, q);
        NWReport rep;
        try {
          rep = noguchi_wang_check(lines, phi);
        } catch (const CalcError& e) {
          if (e.code() == Errc::ImageInDivisor) {
            csv.row(trial, "noguchi-wang", degree, Rational(0), Rational(0), "SKIP", false,
                    "image in divisor");
            continue;
          }
          throw;
        }
        if (!rep.ok) ++violations;
        csv.row(trial, "noguchi-wang", degree, rep.lhs, rep.rhs, rep.ok ? "OK" : "VIOLATION",
                false, "q=" + std::to_string(rep.q));
        break;
      }
      case CampaignKind::Dosvar: {
        bool quad_available = ctx.quad != nullptr && ctx.family != nullptr;
        bool quad_mode = rng.uniform(0, 1) == 1 && quad_available;
        auto td = make_dosvar_trial(rng, quad_mode ? *ctx.quad : *ctx.wronskian, ctx.family,
                                    quad_mode);
        if (!td) {
          csv.row(trial, "dosvar", 0, Rational(0), Rational(0), "SKIP", false, "resampled");
          continue;
        }
        const FormOnP2& w = quad_mode ? *ctx.quad : *ctx.wronskian;
        DosvarReport rep;
        try {
          rep = dosvar_order_check(w, td->comps, td->phi, td->q);
        } catch (const CalcError& e) {
          if (e.code() == Errc::HypothesisFailed || e.code() == Errc::ImageInDivisor) {
            csv.row(trial, "dosvar", td->phi.degree, Rational(0), Rational(0), "SKIP", false,
                    e.what());
            continue;
          }
          throw;
        }
        if (!rep.ok) ++violations;
        csv.row(trial, "dosvar", td->phi.degree, Rational(rep.bound),
                rep.actual ? Rational(*rep.actual) : Rational(-1), rep.ok ? "OK" : "VIOLATION",
                !rep.actual.has_value(), quad_mode ? "quad" : "wronskian");
        break;
      }
      case CampaignKind::QuadTwo: {
        long degree = rng.uniform(1, std::max<long>(1, cfg.max_degree));
        RationalMap phi = random_map(rng, degree);
        QuadReport rep = quad_family_scenario(*ctx.family, Rational(1, 4), phi);
        if (!rep.in_exceptional && !rep.ok) ++violations;
        csv.row(trial, "quad2", degree, rep.lhs, rep.rhs,
                rep.in_exceptional ? "EXCEPTIONAL" : (rep.ok ? "OK" : "VIOLATION"), false,
                rep.notes);
        break;
      }
    }
  }
  FuzzOutcome out;
  out.csv = csv.os.str();
  out.rows = csv.rows;
  out.violations = violations;
  return out;
}

}  // namespace omega
