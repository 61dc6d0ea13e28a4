#include "omega/plane.hpp"

#include <algorithm>

#include "omega/linalg.hpp"

namespace omega {

static const char* kS = "s";
static const char* kT = "t";

static Vec line_coeffs(const Poly& line);

static std::vector<Rational> binary_coeffs(const Poly& f, long degree) {
  // Coefficient of s^i t^(degree-i), i = 0..degree.
  std::vector<Rational> out(degree + 1, Rational(0));
  auto vars = f.vars();
  int si = -1;
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == kS) si = (int)i;
  for (const auto& [e, c] : f.terms()) {
    long es = si >= 0 ? e[si] : 0;
    out[es] = c;
  }
  return out;
}

RationalMap validate_map(const Poly& F0, const Poly& F1, const Poly& F2, std::string* warning) {
  std::vector<Poly> f{F0, F1, F2};
  long d = -1;
  for (const auto& p : f) {
    for (const auto& v : p.vars())
      if (v != kS && v != kT)
        fail(Errc::UnequalDegrees, "map component uses foreign variable " + v);
    long dd;
    if (!p.is_homogeneous(&dd)) fail(Errc::UnequalDegrees, "map component not homogeneous: " + p.str());
    if (p.is_zero()) continue;
    if (d >= 0 && dd != d) fail(Errc::UnequalDegrees, "map components of different degrees");
    d = dd;
  }
  if (d < 0) fail(Errc::ConstantMap, "all components are zero");
  Poly g;
  for (const auto& p : f)
    if (!p.is_zero()) g = gcd(g, p);
  if (!g.is_constant()) {
    if (warning) *warning = "common factor " + g.str() + " removed";
    for (auto& p : f)
      if (!p.is_zero()) p = exact_div(p, g);
    d -= g.total_degree();
  }
  if (d == 0) fail(Errc::ConstantMap, "map is constant");
  int nonzero = 0;
  for (const auto& p : f) nonzero += !p.is_zero();
  if (nonzero <= 1) fail(Errc::ConstantMap, "map image is a single coordinate point");
  RationalMap m;
  m.F0 = f[0];
  m.F1 = f[1];
  m.F2 = f[2];
  m.degree = d;
  return m;
}

static Poly dehom_source(const Poly& f) {
  // Affine parameter x = s/t, reusing the name t for the parameter.
  return f.substitute({{kS, Poly::variable(kT)}, {kT, Poly::constant(1)}});
}

RatFunc map_component_ratio(const RationalMap& phi, int num, int den) {
  const Poly& fn = phi.component(num);
  const Poly& fd = phi.component(den);
  if (fd.is_zero()) fail(Errc::ImageOutsideChart, "chart denominator component vanishes");
  return RatFunc(dehom_source(fn), dehom_source(fd), kT);
}

std::vector<Rational> eval_map(const RationalMap& phi, const PointP1& q) {
  std::map<std::string, Rational> at{{kS, q.s}, {kT, q.t}};
  auto ev = [&](const Poly& p) { return p.is_zero() ? Rational(0) : p.eval(at); };
  std::vector<Rational> out{ev(phi.F0), ev(phi.F1), ev(phi.F2)};
  if (out[0] == 0 && out[1] == 0 && out[2] == 0)
    fail(Errc::Internal, "map has a base point at " + q.str());
  return out;
}

long PlaneDivisor::degree() const {
  long d = 0;
  for (const auto& c : components) d += c.multiplicity * c.equation.total_degree();
  return d;
}

static bool squarefree_homogeneous3(const Poly& g) {
  Poly rest = g;
  for (const char* v : {"X", "Y", "Z"}) {
    long val = rest.monomial_valuation(v);
    if (val >= 2) return false;
    if (val == 1) rest = exact_div(rest, Poly::variable(v));
  }
  Poly dh = rest.substitute({{"X", Poly::constant(1)}});
  if (dh.is_constant()) return true;
  return is_squarefree(dh);
}

bool lines_no_three_concurrent(const std::vector<Poly>& lines, std::string* why) {
  std::vector<Vec> rows;
  for (const auto& l : lines) {
    Vec r(3, Rational(0));
    for (const auto& [e, c] : l.terms()) {
      for (size_t i = 0; i < l.vars().size(); ++i) {
        if (e[i] != 1) continue;
        if (l.vars()[i] == "X") r[0] = c;
        if (l.vars()[i] == "Y") r[1] = c;
        if (l.vars()[i] == "Z") r[2] = c;
      }
    }
    rows.push_back(std::move(r));
  }
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      for (size_t k = j + 1; k < rows.size(); ++k) {
        if (det({rows[i], rows[j], rows[k]}) == 0) {
          if (why)
            *why = "lines " + std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(k) + " are concurrent";
          return false;
        }
      }
  return true;
}

PlaneDivisor make_divisor(const std::vector<Poly>& equations, bool verify_lines) {
  PlaneDivisor d;
  bool all_lines = true;
  for (const auto& raw : equations) {
    Poly g = raw.primitive_normalized();
    long deg;
    if (g.is_zero() || g.is_constant())
      fail(Errc::BadConfig, "divisor component must be a nonconstant polynomial");
    for (const auto& v : g.vars())
      if (v != "X" && v != "Y" && v != "Z")
        fail(Errc::BadConfig, "divisor component uses foreign variable " + v);
    if (!g.is_homogeneous(&deg)) fail(Errc::BadConfig, "divisor component not homogeneous: " + g.str());
    if (!squarefree_homogeneous3(g)) fail(Errc::BadConfig, "divisor component not squarefree: " + g.str());
    if (deg == 2) {
      if (det(conic_matrix(g)) == 0)
        fail(Errc::BadConfig, "degenerate conic component: " + g.str());
    } else if (deg >= 3) {
      d.warnings.push_back("component of degree " + std::to_string(deg) +
                           " assumed irreducible: " + g.str());
    }
    for (const auto& prev : d.components)
      if (prev.equation == g) fail(Errc::BadConfig, "duplicate divisor component " + g.str());
    if (deg != 1) all_lines = false;
    d.components.push_back({g, 1});
  }
  if (verify_lines) {
    if (!all_lines) fail(Errc::BadConfig, "VerifiedLines requires linear components");
    std::string why;
    std::vector<Poly> lines;
    for (const auto& c : d.components) lines.push_back(c.equation);
    if (!lines_no_three_concurrent(lines, &why)) fail(Errc::BadConfig, "SNC failure: " + why);
    d.snc = SncStatus::VerifiedLines;
  } else {
    d.snc = SncStatus::Assumed;
    if (!all_lines || d.components.size() < 3)
      d.warnings.push_back("SNC status assumed, not certified");
  }
  return d;
}

PlaneDivisor make_divisor_with_conic(const std::vector<Poly>& lines, const Poly& conic,
                                     const RationalMap& conic_param) {
  std::vector<Poly> all = lines;
  all.push_back(conic);
  PlaneDivisor d = make_divisor(all, false);
  if (conic.total_degree() != 2) fail(Errc::BadConfig, "last component must be a conic");
  if (!image_in_curve(conic_param, conic))
    fail(Errc::BadConfig, "parametrization does not land in the conic");
  std::string why;
  if (!lines_no_three_concurrent(lines, &why)) fail(Errc::BadConfig, "SNC failure: " + why);
  // Transversality of every line against the conic.
  for (const auto& l : lines) {
    OrderRow row = vanishing_orders(conic_param, l);
    for (const auto& [pt, c] : row.rational_points)
      if (c > 1) fail(Errc::BadConfig, "line tangent to the conic: " + l.str());
    for (const auto& [deg, c] : row.irrational_blocks)
      if (c > 1) fail(Errc::BadConfig, "line tangent to the conic: " + l.str());
  }
  // No line-line intersection may land on the conic (at most two components
  // through any point).
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      std::vector<Vec> ker = kernel({line_coeffs(lines[i]), line_coeffs(lines[j])});
      if (ker.size() != 1) fail(Errc::BadConfig, "coincident lines");
      std::map<std::string, Rational> at{{"X", ker[0][0]}, {"Y", ker[0][1]}, {"Z", ker[0][2]}};
      if (conic.eval(at) == 0)
        fail(Errc::BadConfig, "a line-line intersection lies on the conic");
    }
  d.snc = SncStatus::VerifiedTangency;
  d.warnings.clear();
  return d;
}

long height(const RationalMap& phi, long twist) { return twist * phi.degree; }

long height(const RationalMap& phi, const PlaneDivisor& d) {
  for (const auto& c : d.components)
    if (image_in_curve(phi, c.equation))
      fail(Errc::ImageInDivisor, "image lies in component " + c.equation.str());
  return d.degree() * phi.degree;
}

OrderRow vanishing_orders(const RationalMap& phi, const Poly& component) {
  Poly pullback = component.substitute({{"X", phi.F0}, {"Y", phi.F1}, {"Z", phi.F2}});
  if (pullback.is_zero())
    fail(Errc::ImageInDivisor, "image lies in component " + component.str());
  OrderRow row = factor_binary_form(pullback, kS, kT);
  long total = 0;
  for (const auto& [q, c] : row.rational_points) total += c;
  for (const auto& [e, c] : row.irrational_blocks) total += e * c;
  if (total != row.total_degree ||
      row.total_degree != component.total_degree() * phi.degree)
    fail(Errc::Internal, "order bookkeeping mismatch");
  return row;
}

long order_at(const OrderRow& row, const PointP1& q) {
  for (const auto& [p, c] : row.rational_points)
    if (p == q) return c;
  return 0;
}

long truncated_count(const OrderRow& row, long n) {
  long acc = 0;
  for (const auto& [p, c] : row.rational_points) acc += std::min(n, c);
  for (const auto& [e, c] : row.irrational_blocks) acc += e * std::min(n, c);
  return acc;
}

OrderProfile order_profile(const RationalMap& phi, const PlaneDivisor& d) {
  OrderProfile prof;
  for (const auto& c : d.components) prof.rows.push_back(vanishing_orders(phi, c.equation));
  return prof;
}

long truncated_counting(const RationalMap& phi, const PlaneDivisor& d, long n) {
  long acc = 0;
  for (const auto& c : d.components) acc += truncated_count(vanishing_orders(phi, c.equation), n);
  return acc;
}

long ramification_factor(const Poly& R0, const Poly& R1, const PointP1& q) {
  Poly g = gcd(R0, R1);
  Poly A = R0, B = R1;
  if (!g.is_constant()) {
    A = exact_div(A, g);
    B = exact_div(B, g);
  }
  if (A.is_constant() && B.is_constant()) fail(Errc::ConstantMap, "self-map is constant");
  std::map<std::string, Rational> at{{kS, q.s}, {kT, q.t}};
  auto ev = [&](const Poly& p) { return p.is_zero() || p.is_constant() ? (p.is_zero() ? Rational(0) : p.constant_value()) : p.eval(at); };
  Rational alpha = ev(A), beta = ev(B);
  Poly pullback = B * alpha * Rational(-1) + A * beta;
  if (pullback.is_zero()) fail(Errc::ConstantMap, "self-map is constant");
  return ord_at(pullback, kS, kT, q);
}

RationalMap compose_map(const RationalMap& phi, const Poly& R0, const Poly& R1) {
  std::map<std::string, Poly> subs{{kS, R0}, {kT, R1}};
  return validate_map(phi.F0.substitute(subs), phi.F1.substitute(subs),
                      phi.F2.substitute(subs));
}

bool image_in_curve(const RationalMap& phi, const Poly& g) {
  return g.substitute({{"X", phi.F0}, {"Y", phi.F1}, {"Z", phi.F2}}).is_zero();
}

bool image_is_line(const RationalMap& phi) {
  long d = phi.degree;
  std::vector<Rational> c0 = binary_coeffs(phi.F0, d);
  std::vector<Rational> c1 = binary_coeffs(phi.F1, d);
  std::vector<Rational> c2 = binary_coeffs(phi.F2, d);
  Mat m;
  for (long i = 0; i <= d; ++i) m.push_back({c0[i], c1[i], c2[i]});
  return !kernel(m).empty();
}

static Vec line_coeffs(const Poly& line) {
  Vec r(3, Rational(0));
  for (const auto& [e, c] : line.terms())
    for (size_t i = 0; i < line.vars().size(); ++i) {
      if (e[i] != 1) continue;
      if (line.vars()[i] == "X") r[0] = c;
      if (line.vars()[i] == "Y") r[1] = c;
      if (line.vars()[i] == "Z") r[2] = c;
    }
  return r;
}

RationalMap parametrize_line(const Poly& line) {
  if (line.total_degree() != 1 || !line.is_homogeneous())
    fail(Errc::BadConfig, "not a line: " + line.str());
  Vec a = line_coeffs(line);
  std::vector<Vec> basis = kernel({a});
  if (basis.size() != 2) fail(Errc::Internal, "line kernel has wrong dimension");
  Poly s = Poly::variable(kS), t = Poly::variable(kT);
  return validate_map(s * basis[0][0] + t * basis[1][0], s * basis[0][1] + t * basis[1][1],
                      s * basis[0][2] + t * basis[1][2]);
}

std::vector<std::vector<Rational>> conic_matrix(const Poly& conic) {
  Mat m(3, Vec(3, Rational(0)));
  const std::vector<std::string> names{"X", "Y", "Z"};
  for (const auto& [e, c] : conic.terms()) {
    int idx[3] = {0, 0, 0};
    for (size_t i = 0; i < conic.vars().size(); ++i) {
      for (int j = 0; j < 3; ++j)
        if (conic.vars()[i] == names[j]) idx[j] = e[i];
    }
    if (idx[0] + idx[1] + idx[2] != 2) fail(Errc::BadConfig, "not a conic: " + conic.str());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b && idx[a] == 2) m[a][b] += c;
        if (a != b && idx[a] == 1 && idx[b] == 1) m[a][b] += c / 2;
      }
  }
  return m;
}

RationalMap parametrize_conic(const Poly& conic, const std::vector<Rational>& point) {
  std::map<std::string, Rational> at{{"X", point[0]}, {"Y", point[1]}, {"Z", point[2]}};
  if (conic.eval(at) != 0) fail(Errc::BadConfig, "base point not on the conic");
  Vec grad{conic.derivative("X").is_zero() ? Rational(0) : conic.derivative("X").eval(at),
           conic.derivative("Y").is_zero() ? Rational(0) : conic.derivative("Y").eval(at),
           conic.derivative("Z").is_zero() ? Rational(0) : conic.derivative("Z").eval(at)};
  if (grad[0] == 0 && grad[1] == 0 && grad[2] == 0)
    fail(Errc::SingularBasePoint, "conic singular at the base point");
  // Pick two standard basis vectors completing the base point to a basis.
  std::vector<Vec> es{{Rational(1), 0, 0}, {Rational(0), 1, 0}, {Rational(0), 0, 1}};
  Vec e1, e2;
  for (size_t i = 0; i < 3 && e2.empty(); ++i)
    for (size_t j = i + 1; j < 3 && e2.empty(); ++j) {
      if (det({point, es[i], es[j]}) != 0) {
        e1 = es[i];
        e2 = es[j];
      }
    }
  if (e2.empty()) fail(Errc::Internal, "degenerate base point");
  Poly s = Poly::variable(kS), t = Poly::variable(kT);
  // Direction d(s,t) = s*e1 + t*e2; second intersection of the chord:
  // C(d) * point - (grad . d) * d.
  std::vector<Poly> dir(3);
  for (int i = 0; i < 3; ++i) dir[i] = s * e1[i] + t * e2[i];
  Poly cd = conic.substitute({{"X", dir[0]}, {"Y", dir[1]}, {"Z", dir[2]}});
  Poly gd = dir[0] * grad[0] + dir[1] * grad[1] + dir[2] * grad[2];
  Poly f0 = cd * point[0] - gd * dir[0];
  Poly f1 = cd * point[1] - gd * dir[1];
  Poly f2 = cd * point[2] - gd * dir[2];
  return validate_map(f0, f1, f2);
}

}  // namespace omega
