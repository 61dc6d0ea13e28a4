#include "omega/formp2.hpp"

#include <algorithm>
#include <set>

namespace omega {

const std::vector<std::string>& chart_coords(Chart c) {
  static const std::vector<std::string> ux{"u", "v"}, uy{"a", "b"}, uz{"p", "q"};
  switch (c) {
    case Chart::UX: return ux;
    case Chart::UY: return uy;
    default: return uz;
  }
}

std::string chart_label(Chart c) {
  switch (c) {
    case Chart::UX: return "UX";
    case Chart::UY: return "UY";
    default: return "UZ";
  }
}

Poly chart_dehomogenize(const Poly& g, Chart c) {
  const auto& co = chart_coords(c);
  std::map<std::string, Poly> subs;
  switch (c) {
    case Chart::UX:
      subs = {{"X", Poly::constant(1)}, {"Y", Poly::variable(co[0])}, {"Z", Poly::variable(co[1])}};
      break;
    case Chart::UY:
      subs = {{"X", Poly::variable(co[0])}, {"Y", Poly::constant(1)}, {"Z", Poly::variable(co[1])}};
      break;
    case Chart::UZ:
      subs = {{"X", Poly::variable(co[0])}, {"Y", Poly::variable(co[1])}, {"Z", Poly::constant(1)}};
      break;
  }
  return g.substitute(subs);
}

Poly chart_homogenize(const Poly& g, Chart c) {
  long d = g.total_degree();
  if (d < 0) return Poly();
  const auto& co = chart_coords(c);
  std::map<std::string, Poly> subs;
  std::string hvar;
  switch (c) {
    case Chart::UX:
      subs = {{co[0], Poly::variable("Y")}, {co[1], Poly::variable("Z")}};
      hvar = "X";
      break;
    case Chart::UY:
      subs = {{co[0], Poly::variable("X")}, {co[1], Poly::variable("Z")}};
      hvar = "Y";
      break;
    case Chart::UZ:
      subs = {{co[0], Poly::variable("X")}, {co[1], Poly::variable("Y")}};
      hvar = "Z";
      break;
  }
  Poly acc;
  Poly h = Poly::variable(hvar);
  for (const auto& [e, coeff] : g.terms()) {
    Poly term = Poly::constant(coeff);
    long td = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      td += e[i];
      if (e[i] > 0) term = term * subs.at(g.vars()[i]).pow(e[i]);
    }
    acc += term * h.pow(d - td);
  }
  return acc;
}

std::vector<Rational> chart_point_to_homogeneous(Chart c, const Rational& x1, const Rational& x2) {
  switch (c) {
    case Chart::UX: return {Rational(1), x1, x2};
    case Chart::UY: return {x1, Rational(1), x2};
    default: return {x1, x2, Rational(1)};
  }
}

std::optional<Chart> chart_containing(const std::vector<Rational>& h) {
  if (h[0] != 0) return Chart::UX;
  if (h[1] != 0) return Chart::UY;
  if (h[2] != 0) return Chart::UZ;
  return std::nullopt;
}

std::map<std::string, RatFunc> chart_substitutions(const RationalMap& phi, Chart c) {
  int den = (int)c;  // UX -> F0, UY -> F1, UZ -> F2
  if (phi.component(den).is_zero())
    fail(Errc::ImageOutsideChart, "image lies in the hyperplane of chart " + chart_label(c));
  const auto& co = chart_coords(c);
  int n1, n2;
  switch (c) {
    case Chart::UX: n1 = 1; n2 = 2; break;  // u = Y/X, v = Z/X
    case Chart::UY: n1 = 0; n2 = 2; break;  // a = X/Y, b = Z/Y
    default: n1 = 0; n2 = 1; break;         // p = X/Z, q = Y/Z
  }
  return {{co[0], map_component_ratio(phi, n1, den)}, {co[1], map_component_ratio(phi, n2, den)}};
}

// --- chart transport for symmetric forms ------------------------------------

namespace {

// num / w^d with w the single denominator variable of a chart transition.
struct MonoFrac {
  Poly num;
  long d = 0;
};

struct Transition {
  std::string denvar;      // w: also the transition factor variable
  MonoFrac first, second;  // source coordinates expressed in target coordinates
};

MonoFrac mf(const Poly& num, long d) { return MonoFrac{num, d}; }

void mf_normalize(MonoFrac& f, const std::string& w) {
  if (f.num.is_zero()) {
    f.d = 0;
    return;
  }
  while (f.d > 0 && f.num.monomial_valuation(w) >= 1) {
    f.num = exact_div(f.num, Poly::variable(w));
    --f.d;
  }
}

MonoFrac mf_add(const MonoFrac& a, const MonoFrac& b, const std::string& w) {
  long d = std::max(a.d, b.d);
  Poly wv = Poly::variable(w);
  MonoFrac r{a.num * wv.pow(d - a.d) + b.num * wv.pow(d - b.d), d};
  mf_normalize(r, w);
  return r;
}

MonoFrac mf_mul(const MonoFrac& a, const MonoFrac& b, const std::string& w) {
  MonoFrac r{a.num * b.num, a.d + b.d};
  mf_normalize(r, w);
  return r;
}

// Partial derivative of num/w^d.
MonoFrac mf_derivative(const MonoFrac& f, const std::string& var, const std::string& w) {
  if (var == w) {
    MonoFrac r{Poly::variable(w) * f.num.derivative(w) - f.num * Rational(f.d), f.d + 1};
    mf_normalize(r, w);
    return r;
  }
  MonoFrac r{f.num.derivative(var), f.d};
  mf_normalize(r, w);
  return r;
}

Transition transition_between(Chart a, Chart b) {
  auto P = [](const char* s) { return Poly::variable(s); };
  auto one = Poly::constant(1);
  if (a == Chart::UX && b == Chart::UY) return {"a", mf(one, 1), mf(P("b"), 1)};
  if (a == Chart::UX && b == Chart::UZ) return {"p", mf(P("q"), 1), mf(one, 1)};
  if (a == Chart::UY && b == Chart::UX) return {"u", mf(one, 1), mf(P("v"), 1)};
  if (a == Chart::UY && b == Chart::UZ) return {"q", mf(P("p"), 1), mf(one, 1)};
  if (a == Chart::UZ && b == Chart::UX) return {"v", mf(one, 1), mf(P("u"), 1)};
  if (a == Chart::UZ && b == Chart::UY) return {"b", mf(P("a"), 1), mf(one, 1)};
  fail(Errc::Internal, "transition between identical charts");
}

MonoFrac eval_poly_at_mf(const Poly& g, const MonoFrac& s1, const MonoFrac& s2,
                         const std::vector<std::string>& src_coords, const std::string& w) {
  MonoFrac acc{Poly(), 0};
  for (const auto& [e, c] : g.terms()) {
    MonoFrac term{Poly::constant(c), 0};
    for (size_t i = 0; i < e.size(); ++i) {
      const MonoFrac& base = (g.vars()[i] == src_coords[0]) ? s1 : s2;
      for (int k = 0; k < e[i]; ++k) term = mf_mul(term, base, w);
    }
    acc = mf_add(acc, term, w);
  }
  return acc;
}

}  // namespace

TransportResult chart_transport(const HsElem<Poly>& on_a, Chart a, Chart b, int r, long twist) {
  if (on_a.order() != 1) fail(Errc::BadConfig, "automatic transport is defined for order m = 1");
  if (a == b) return {on_a, 0};
  Transition tr = transition_between(a, b);
  const auto& src = chart_coords(a);
  const auto& dst = chart_coords(b);
  const std::string& w = tr.denvar;
  // Differentials of the source coordinates: row i gives the (d dst0, d dst1)
  // components of d(src_i).
  MonoFrac j[2][2] = {
      {mf_derivative(tr.first, dst[0], w), mf_derivative(tr.first, dst[1], w)},
      {mf_derivative(tr.second, dst[0], w), mf_derivative(tr.second, dst[1], w)},
  };
  // Expand sum_i A_i (d src0)^{r-i} (d src1)^i as a binary form in the target
  // differentials with MonoFrac coefficients.
  std::vector<MonoFrac> acc(r + 1, MonoFrac{Poly(), 0});
  for (const auto& [mono, coeff] : on_a.terms()) {
    int i = mono.at(1, 1);  // exponent of d(src1)
    if (mono.at(1, 0) + i != r) fail(Errc::Internal, "chart expression has wrong degree");
    MonoFrac cval = eval_poly_at_mf(coeff, tr.first, tr.second, src, w);
    // (alpha dX + beta dY)^(r-i) * (gamma dX + delta dY)^i by convolution.
    std::vector<MonoFrac> formv{cval};
    auto mul_linear = [&](const MonoFrac& c0, const MonoFrac& c1) {
      std::vector<MonoFrac> next(formv.size() + 1, MonoFrac{Poly(), 0});
      for (size_t k = 0; k < formv.size(); ++k) {
        next[k] = mf_add(next[k], mf_mul(formv[k], c0, w), w);
        next[k + 1] = mf_add(next[k + 1], mf_mul(formv[k], c1, w), w);
      }
      formv = std::move(next);
    };
    for (int k = 0; k < r - i; ++k) mul_linear(j[0][0], j[0][1]);
    for (int k = 0; k < i; ++k) mul_linear(j[1][0], j[1][1]);
    for (int k = 0; k <= r; ++k) acc[k] = mf_add(acc[k], formv[k], w);
  }
  long clearing = 0;
  for (const auto& c : acc) clearing = std::max(clearing, c.d);
  if (clearing > twist)
    fail(Errc::NotGlobalSection,
         "clearing exponent " + std::to_string(clearing) + " exceeds twist budget " +
             std::to_string(twist));
  Poly wv = Poly::variable(w);
  HsElem<Poly> out(1, dst);
  HsElem<Poly> one = HsElem<Poly>::scalar(1, dst, Poly::constant(1));
  for (int k = 0; k <= r; ++k) {
    Poly ck = acc[k].num * wv.pow(twist - acc[k].d);
    if (ck.is_zero()) continue;
    HsElem<Poly> g0 = one, g1 = one;
    for (int e = 0; e < r - k; ++e) g0 = g0 * HsElem<Poly>::generator(1, dst, 1, 0, Poly::constant(1));
    for (int e = 0; e < k; ++e) g1 = g1 * HsElem<Poly>::generator(1, dst, 1, 1, Poly::constant(1));
    out = out + (g0 * g1).scaled(ck);
  }
  return {out, clearing};
}

// --- FormOnP2 ----------------------------------------------------------------

static void validate_chart_expr(const HsElem<Poly>& e, Chart c, int m, int r) {
  if (e.order() != m) fail(Errc::BadConfig, "chart expression has wrong order");
  if (e.coords() != chart_coords(c))
    fail(Errc::BadConfig, "chart expression must use coordinates of " + chart_label(c));
  long d;
  if (!e.weighted_homogeneous(&d) || (!e.is_zero() && d != r))
    fail(Errc::InhomogeneousDegree, "chart expression is not weighted-homogeneous of degree " +
                                        std::to_string(r));
}

FormOnP2 FormOnP2::from_single_chart(int m, int r, long twist, Chart chart, HsElem<Poly> expr) {
  if (m != 1)
    fail(Errc::BadConfig, "forms of order m >= 2 require user-supplied expressions on all charts");
  validate_chart_expr(expr, chart, m, r);
  if (expr.is_zero()) fail(Errc::ZeroForm, "zero chart expression");
  FormOnP2 f;
  f.m_ = m;
  f.r_ = r;
  f.twist_ = twist;
  f.prov_ = Provenance::TransportedFromOne;
  f.exprs_[(int)chart] = expr;
  for (Chart other : {Chart::UX, Chart::UY, Chart::UZ}) {
    if (other == chart) continue;
    f.exprs_[(int)other] = chart_transport(expr, chart, other, r, twist).form;
  }
  // Pairwise compatibility (cocycle check).
  for (Chart a : {Chart::UX, Chart::UY, Chart::UZ})
    for (Chart b : {Chart::UX, Chart::UY, Chart::UZ}) {
      if (a == b) continue;
      if (chart_transport(f.exprs_[(int)a], a, b, r, twist).form != f.exprs_[(int)b])
        fail(Errc::ChartIncompatible, "transported chart expressions do not glue");
    }
  return f;
}

static std::vector<RationalMap> compatibility_test_maps() {
  Poly s = Poly::variable("s"), t = Poly::variable("t");
  std::vector<RationalMap> out;
  out.push_back(validate_map(s, t, s + t));
  out.push_back(validate_map(s * s, s * t, t * t));
  out.push_back(validate_map(s * s * s + t * t * t, s * s * t - s * t * t, t * t * t + s * t * t));
  return out;
}

FormOnP2 FormOnP2::from_all_charts(int m, int r, long twist, std::array<HsElem<Poly>, 3> exprs) {
  for (Chart c : {Chart::UX, Chart::UY, Chart::UZ})
    validate_chart_expr(exprs[(int)c], c, m, r);
  FormOnP2 f;
  f.m_ = m;
  f.r_ = r;
  f.twist_ = twist;
  f.prov_ = Provenance::UserAllCharts;
  f.exprs_ = std::move(exprs);
  if (m == 1) {
    for (Chart a : {Chart::UX, Chart::UY, Chart::UZ})
      for (Chart b : {Chart::UX, Chart::UY, Chart::UZ}) {
        if (a == b) continue;
        if (chart_transport(f.exprs_[(int)a], a, b, r, twist).form != f.exprs_[(int)b])
          fail(Errc::ChartIncompatible, "chart expressions do not glue (transport mismatch)");
      }
    return f;
  }
  // Order >= 2: verify pullback agreement along test curves on chart overlaps.
  for (const RationalMap& phi : compatibility_test_maps()) {
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        if (phi.component(a).is_zero() || phi.component(b).is_zero()) continue;
        HsElem<RatFunc> pa = hs_pullback(f.exprs_[a], chart_substitutions(phi, (Chart)a));
        HsElem<RatFunc> pb = hs_pullback(f.exprs_[b], chart_substitutions(phi, (Chart)b));
        RatFunc fa = RatFunc::from_poly(
            phi.component(a).substitute({{"s", Poly::variable("t")}, {"t", Poly::constant(1)}}),
            "t");
        RatFunc fb = RatFunc::from_poly(
            phi.component(b).substitute({{"s", Poly::variable("t")}, {"t", Poly::constant(1)}}),
            "t");
        if (pa.scaled(fa.pow(twist)) != pb.scaled(fb.pow(twist)))
          fail(Errc::ChartIncompatible,
               "chart expressions disagree along a test curve between " + chart_label((Chart)a) +
                   " and " + chart_label((Chart)b));
      }
  }
  return f;
}

bool FormOnP2::is_zero() const {
  return exprs_[0].is_zero() && exprs_[1].is_zero() && exprs_[2].is_zero();
}

BinaryForm<Poly> FormOnP2::symbol_form(Chart c) const {
  if (m_ != 1) fail(Errc::BadConfig, "symbol form is defined for m = 1");
  std::vector<Poly> coeffs(r_ + 1);
  for (const auto& [mono, coeff] : exprs_[(int)c].terms()) {
    int j = mono.at(1, 1);
    coeffs[j] += coeff;
  }
  return BinaryForm<Poly>(r_, std::move(coeffs));
}

bool is_reduced(const FormOnP2& w) {
  if (w.order() != 1) fail(Errc::BadConfig, "reducedness is defined for m = 1");
  if (w.is_zero()) fail(Errc::ZeroForm, "the zero form is not reduced");
  return !binary_form_discriminant(w.symbol_form(Chart::UX)).is_zero();
}

static bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.primitive_normalized() == b.primitive_normalized();
}

DiscriminantLocus discriminant_locus(const FormOnP2& w) {
  if (!is_reduced(w)) fail(Errc::NotReduced, "discriminant locus needs a reduced form");
  DiscriminantLocus out;
  for (Chart c : {Chart::UX, Chart::UY, Chart::UZ})
    out.chart_delta[(int)c] = binary_form_discriminant(w.symbol_form(c));
  Poly sx = squarefree_part(out.chart_delta[0]);
  Poly global = chart_homogenize(sx, Chart::UX);
  // The only component invisible on U_X is the line X = 0; it shows up as the
  // coordinate p on U_Z.
  Poly sz = squarefree_part(out.chart_delta[2]);
  if (sz.monomial_valuation("p") >= 1) global = global * Poly::variable("X");
  global = global.primitive_normalized();
  for (Chart c : {Chart::UX, Chart::UY, Chart::UZ}) {
    Poly restricted = chart_dehomogenize(global, c);
    Poly expected = squarefree_part(out.chart_delta[(int)c]);
    // Strip coordinate-line factors that the chart cannot see.
    for (const auto& cv : chart_coords(c)) {
      while (restricted.monomial_valuation(cv) >= 1)
        restricted = exact_div(restricted, Poly::variable(cv));
    }
    for (const auto& cv : chart_coords(c)) {
      while (expected.monomial_valuation(cv) >= 1)
        expected = exact_div(expected, Poly::variable(cv));
    }
    if (!proportional(restricted, expected))
      fail(Errc::ChartIncompatible, "per-chart discriminants do not glue on " + chart_label(c));
  }
  out.global = global;
  return out;
}

bool is_integral_parametrized(const FormOnP2& w, const RationalMap& phi) {
  for (int c = 0; c < 3; ++c) {
    if (phi.component(c).is_zero()) continue;
    return hs_pullback(w.chart_expr((Chart)c), chart_substitutions(phi, (Chart)c)).is_zero();
  }
  fail(Errc::Internal, "map has no nonzero component");
}

HsElem<RatFunc> pullback_on_chart(const FormOnP2& w, const RationalMap& phi, Chart c) {
  return hs_pullback(w.chart_expr(c), chart_substitutions(phi, c));
}

// --- implicit branches -------------------------------------------------------

// Newton solve g(t, y(t)) = 0 with y(0) = 0, g_y(0,0) a unit.
static Series newton_branch(const Poly& g, const std::string& xvar, const std::string& yvar,
                            long order) {
  Poly gy = g.derivative(yvar);
  Series x = Series::variable("t", order);
  Series y = Series("t", order);  // zero
  for (int it = 0; it < 64; ++it) {
    Series val = eval_poly_at_series(g, {{xvar, x}, {yvar, y}});
    if (val.is_zero()) return y;
    Series dval = eval_poly_at_series(gy, {{xvar, x}, {yvar, y}});
    y = y - val * dval.inverse();
  }
  fail(Errc::Internal, "Newton iteration for the branch did not converge");
}

ImplicitVerdict is_integral_implicit(const FormOnP2& w, const Poly& curve, Chart c,
                                     const Rational& x1, const Rational& x2, long n) {
  const auto& co = chart_coords(c);
  Poly g = chart_dehomogenize(curve, c);
  if (g.is_zero() || g.is_constant()) fail(Errc::BadConfig, "curve is trivial on this chart");
  std::map<std::string, Rational> at{{co[0], x1}, {co[1], x2}};
  if (g.eval(at) != 0) fail(Errc::BranchNotRational, "point does not lie on the curve");
  Poly gs = g.shift({{co[0], x1}, {co[1], x2}});
  Rational gx = gs.derivative(co[0]).eval({{co[0], Rational(0)}, {co[1], Rational(0)}});
  Rational gy = gs.derivative(co[1]).eval({{co[0], Rational(0)}, {co[1], Rational(0)}});
  if (gx == 0 && gy == 0) fail(Errc::SingularBasePoint, "curve is singular at the base point");
  long internal = n + w.order() + 2;
  Series xs = Series::variable("t", internal);
  std::map<std::string, Series> subs;
  if (gy != 0) {
    Series ybr = newton_branch(gs, co[0], co[1], internal);
    subs[co[0]] = xs + Series::constant(x1, "t", internal);
    subs[co[1]] = ybr + Series::constant(x2, "t", internal);
  } else {
    Series xbr = newton_branch(gs, co[1], co[0], internal);
    subs[co[0]] = xbr + Series::constant(x1, "t", internal);
    subs[co[1]] = xs + Series::constant(x2, "t", internal);
  }
  HsElem<Series> pulled = hs_pullback_series(w.chart_expr(c), subs);
  long obstruction = -1;
  long validity = internal;
  for (const auto& [mono, coeff] : pulled.terms()) {
    validity = std::min(validity, coeff.order());
    long lo = coeff.lowest_order();
    if (lo >= 0) obstruction = (obstruction < 0) ? lo : std::min(obstruction, lo);
  }
  if (obstruction < 0) return {true, std::min(n, validity)};
  return {false, obstruction};
}

// --- local branches (Hensel) --------------------------------------------------

namespace {

// Binary form in (dx, dy) with Poly coefficients, truncated at total degree N.
struct LocalForm {
  std::vector<Poly> a;  // a[j] = coefficient of dx^{r-j} dy^j
  long r() const { return (long)a.size() - 1; }
};

LocalForm multiply(const LocalForm& f, const LocalForm& g, long cap) {
  LocalForm out;
  out.a.assign(f.a.size() + g.a.size() - 1, Poly());
  for (size_t i = 0; i < f.a.size(); ++i)
    for (size_t j = 0; j < g.a.size(); ++j)
      out.a[i + j] += (f.a[i] * g.a[j]).truncate_total_degree(cap);
  for (auto& p : out.a) p = p.truncate_total_degree(cap);
  return out;
}

}  // namespace

BranchReport local_branches(const FormOnP2& w, Chart c, const Rational& x1, const Rational& x2,
                            long n) {
  if (w.order() != 1) fail(Errc::BadConfig, "local branch analysis is defined for m = 1");
  const auto& co = chart_coords(c);
  const long r = w.degree();
  BinaryForm<Poly> sym = w.symbol_form(c);
  Poly delta = binary_form_discriminant(sym);
  std::map<std::string, Rational> at{{co[0], x1}, {co[1], x2}};
  auto evalp = [&](const Poly& p) { return p.is_zero() ? Rational(0) : p.eval(at); };
  if (evalp(delta) == 0)
    fail(Errc::PointOnDiscriminant, "point lies on the discriminant locus");

  BranchReport rep;
  rep.chart = c;
  rep.x1 = x1;
  rep.x2 = x2;
  rep.degree = r;
  const long cap = n;  // truncation (x,y)^(n+1)

  // Shifted coefficients and the constant symbol form.
  std::vector<Poly> As(r + 1);
  std::vector<Rational> a0(r + 1);
  for (long j = 0; j <= r; ++j) {
    As[j] = sym.coeff[j].shift({{co[0], x1}, {co[1], x2}}).truncate_total_degree(cap);
    a0[j] = evalp(sym.coeff[j]);
  }
  // T(mu) = sum a0_j mu^j; roots are the non-vertical tangent directions.
  Poly tmu;
  Poly mu = Poly::variable("#m");
  for (long j = 0; j <= r; ++j) tmu += Poly::constant(a0[j]) * mu.pow(j);
  if (tmu.is_zero()) fail(Errc::Internal, "symbol form vanishes at the point");
  long tdeg = tmu.degree_in("#m");
  long vertical_mult = r - tdeg;
  if (vertical_mult > 1) fail(Errc::Internal, "repeated vertical factor off the discriminant");
  std::vector<std::pair<Rational, long>> roots =
      tdeg >= 1 ? rational_roots(tmu, "#m") : std::vector<std::pair<Rational, long>>{};
  long rational_mult = vertical_mult;
  for (const auto& [root, mult] : roots) {
    if (mult != 1) fail(Errc::Internal, "repeated tangent direction off the discriminant");
    rational_mult += 1;
  }
  rep.irrational_multiplicity = r - rational_mult;
  rep.total_multiplicity = r;
  std::set<Rational> seen;
  rep.tangents_distinct = true;
  for (const auto& [root, mult] : roots)
    if (!seen.insert(root).second) rep.tangents_distinct = false;

  // Hensel lifting of each rational linear factor and its branch series.
  std::vector<std::pair<bool, Poly>> lifted;  // (vertical?, mu(x,y)) truncated
  auto lift_root = [&](bool vertical, const Rational& mu0) -> Poly {
    // For the non-vertical case solve T(x,y;mu) = sum As_j mu^j = 0 near mu0;
    // for the vertical case use the reversed coefficients and root 0.
    std::vector<Poly> coef(r + 1);
    for (long j = 0; j <= r; ++j) coef[j] = vertical ? As[r - j] : As[j];
    Poly cur = Poly::constant(mu0);
    for (int it = 0; it < 64; ++it) {
      std::vector<Poly> pw(r + 1);
      pw[0] = Poly::constant(1);
      for (long j = 1; j <= r; ++j) pw[j] = (pw[j - 1] * cur).truncate_total_degree(cap);
      Poly val, dval;
      for (long j = 0; j <= r; ++j) {
        val += (coef[j] * pw[j]).truncate_total_degree(cap);
        if (j >= 1) dval += (coef[j] * pw[j - 1] * Rational(j)).truncate_total_degree(cap);
      }
      val = val.truncate_total_degree(cap);
      if (val.is_zero()) return cur;
      dval = dval.truncate_total_degree(cap);
      Poly inv = poly_inverse_mod_total_degree(dval, cap);
      cur = (cur - val * inv).truncate_total_degree(cap);
    }
    fail(Errc::Internal, "Hensel lift did not converge");
  };

  long internal = n + 3;
  for (const auto& [mu0, mult] : roots) {
    Poly muxy = lift_root(false, mu0);
    lifted.emplace_back(false, muxy);
    // Branch: y' = mu(x, y), y(0) = 0, by Picard iteration.
    Series y("t", internal);
    Series x = Series::variable("t", internal);
    for (long it = 0; it < internal + 2; ++it) {
      Series rhs = eval_poly_at_series(muxy, {{co[0], x.truncated(internal - 1)},
                                              {co[1], y.truncated(internal - 1)}});
      y = rhs.integral().truncated(internal);
    }
    BranchFactor bf;
    bf.vertical = false;
    bf.tangent = mu0;
    bf.branch = y;
    // Verify the branch annihilates the chart form to order n.
    std::map<std::string, Series> subs{
        {co[0], x + Series::constant(x1, "t", internal)},
        {co[1], y + Series::constant(x2, "t", internal)}};
    HsElem<Series> pulled = hs_pullback_series(w.chart_expr(c), subs);
    long obstruction = -1;
    for (const auto& [monoK, coeff] : pulled.terms()) {
      long lo = coeff.lowest_order();
      if (lo >= 0) obstruction = obstruction < 0 ? lo : std::min(obstruction, lo);
    }
    if (obstruction >= 0 && obstruction <= n)
      fail(Errc::Internal, "lifted branch does not annihilate the form");
    bf.annihilation_order = n;
    rep.rational_factors.push_back(std::move(bf));
  }
  if (vertical_mult == 1) {
    Poly nuxy = lift_root(true, Rational(0));
    lifted.emplace_back(true, nuxy);
    Series xbr("t", internal);
    Series yv = Series::variable("t", internal);
    for (long it = 0; it < internal + 2; ++it) {
      Series rhs = eval_poly_at_series(nuxy, {{co[0], xbr.truncated(internal - 1)},
                                              {co[1], yv.truncated(internal - 1)}});
      xbr = rhs.integral().truncated(internal);
    }
    BranchFactor bf;
    bf.vertical = true;
    bf.tangent = Rational(0);
    bf.branch = xbr;
    std::map<std::string, Series> subs{
        {co[0], xbr + Series::constant(x1, "t", internal)},
        {co[1], yv + Series::constant(x2, "t", internal)}};
    HsElem<Series> pulled = hs_pullback_series(w.chart_expr(c), subs);
    for (const auto& [monoK, coeff] : pulled.terms()) {
      long lo = coeff.lowest_order();
      if (lo >= 0 && lo <= n) fail(Errc::Internal, "vertical branch does not annihilate the form");
    }
    bf.annihilation_order = n;
    rep.rational_factors.push_back(std::move(bf));
  }

  // Hensel product check: divide the shifted symbol form by each lifted linear
  // factor, then multiply everything back and compare mod (x,y)^(n+1).
  {
    // M = (dy - mu dx) * Q  gives  q_{k-1} = M_k + mu*q_k descending from
    // q_{rho-1} = M_rho, remainder M_0 + mu*q_0.
    auto divide_nonvertical = [&](const LocalForm& M, const Poly& muxy) {
      long rr = M.r();
      std::vector<Poly> out(rr);
      Poly prev = M.a[rr];
      for (long k = rr; k >= 1; --k) {
        out[k - 1] = prev;
        if (k >= 2) prev = (M.a[k - 1] + muxy * prev).truncate_total_degree(cap);
      }
      Poly rem = (M.a[0] + muxy * out[0]).truncate_total_degree(cap);
      if (!rem.is_zero()) fail(Errc::Internal, "Hensel division has nonzero remainder");
      LocalForm q;
      q.a = std::move(out);
      return q;
    };
    // M = (dx - nu dy) * Q  gives  q_k = M_k + nu*q_{k-1} ascending from
    // q_0 = M_0, remainder M_rho + nu*q_{rho-1}.
    auto divide_vertical = [&](const LocalForm& M, const Poly& nuxy) {
      long rr = M.r();
      std::vector<Poly> out(rr);
      Poly prev = M.a[0];
      for (long k = 0; k <= rr - 1; ++k) {
        out[k] = prev;
        if (k + 1 <= rr - 1) prev = (M.a[k + 1] + nuxy * prev).truncate_total_degree(cap);
      }
      Poly rem = (M.a[rr] + nuxy * out[rr - 1]).truncate_total_degree(cap);
      if (!rem.is_zero()) fail(Errc::Internal, "Hensel division has nonzero remainder");
      LocalForm q;
      q.a = std::move(out);
      return q;
    };
    LocalForm S;
    S.a = As;
    LocalForm quotient = S;
    std::vector<LocalForm> factors;
    for (const auto& [vertical, muxy] : lifted) {
      LocalForm lin;
      if (!vertical)
        lin.a = {(-muxy).truncate_total_degree(cap), Poly::constant(1)};
      else
        lin.a = {Poly::constant(1), (-muxy).truncate_total_degree(cap)};
      factors.push_back(lin);
      quotient = vertical ? divide_vertical(quotient, muxy) : divide_nonvertical(quotient, muxy);
    }
    LocalForm prod = quotient;
    for (const auto& f : factors) prod = multiply(prod, f, cap);
    bool ok = prod.a.size() == S.a.size();
    if (ok)
      for (size_t i = 0; i < S.a.size(); ++i)
        if (prod.a[i].truncate_total_degree(cap) != S.a[i].truncate_total_degree(cap)) ok = false;
    rep.hensel_product_ok = ok;
  }
  return rep;
}

}  // namespace omega
