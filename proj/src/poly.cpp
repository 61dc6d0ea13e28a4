#include "omega/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace omega {

// ---------------------------------------------------------------------------
// PointP1

PointP1::PointP1(Rational s_, Rational t_) : s(std::move(s_)), t(std::move(t_)) {
  if (s == 0 && t == 0) fail(Errc::Internal, "[0:0] is not a point of P^1");
  if (t != 0) {
    s /= t;
    t = 1;
  } else {
    s = 1;
  }
}

bool PointP1::operator<(const PointP1& o) const {
  if (t != o.t) return t < o.t;
  return s < o.s;
}

std::string PointP1::str() const {
  if (is_infinity()) return "[1:0]";
  return "[" + to_string(s) + ":1]";
}

// ---------------------------------------------------------------------------
// Poly basics

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.emplace(Exps{}, c);
  return p;
}

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.vars_ = {name};
  p.terms_.emplace(Exps{1}, Rational(1));
  return p;
}

Poly Poly::from_terms(std::vector<std::string> vars, std::map<Exps, Rational> terms) {
  Poly p;
  p.vars_ = std::move(vars);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

Rational Poly::constant_value() const {
  if (!is_constant()) fail(Errc::Internal, "constant_value on non-constant: " + str());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

long Poly::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, (long)std::accumulate(e.begin(), e.end(), 0));
  return d;
}

long Poly::degree_in(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return is_zero() ? -1 : 0;
  size_t i = it - vars_.begin();
  long d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, (long)e[i]);
  return d;
}

bool Poly::is_homogeneous(long* degree) const {
  if (is_zero()) {
    if (degree) *degree = -1;
    return true;
  }
  long d = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  if (degree) *degree = d;
  return true;
}

bool Poly::uses(const std::string& var) const {
  return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

void Poly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0) ? terms_.erase(it) : std::next(it);
  if (vars_.empty()) return;
  // Drop variables that no longer occur.
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  std::vector<size_t> keep;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) {
      nv.push_back(vars_[i]);
      keep.push_back(i);
    }
  std::map<Exps, Rational> nt;
  for (const auto& [e, c] : terms_) {
    Exps ne(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

void Poly::align(const Poly& a, const Poly& b, Poly& a2, Poly& b2) {
  std::vector<std::string> merged;
  std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                 std::back_inserter(merged));
  auto remap = [&](const Poly& src, Poly& dst) {
    dst.vars_ = merged;
    dst.terms_.clear();
    std::vector<size_t> pos(src.vars_.size());
    for (size_t i = 0; i < src.vars_.size(); ++i)
      pos[i] = std::find(merged.begin(), merged.end(), src.vars_[i]) - merged.begin();
    for (const auto& [e, c] : src.terms_) {
      Exps ne(merged.size(), 0);
      for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
      dst.terms_.emplace(std::move(ne), c);
    }
  };
  remap(a, a2);
  remap(b, b2);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  Poly a, b;
  align(*this, o, a, b);
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = a.terms_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  a.normalize();
  return *this = std::move(a);
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) return *this = Poly();
  Poly a, b;
  align(*this, o, a, b);
  Poly r;
  r.vars_ = a.vars_;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exps e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      Rational c = ca * cb;
      auto [it, inserted] = r.terms_.emplace(std::move(e), c);
      if (!inserted) it->second += c;
    }
  r.normalize();
  return *this = std::move(r);
}

Poly Poly::operator*(const Rational& k) const {
  if (k == 0) return Poly();
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c *= k;
  return r;
}

Poly Poly::pow(long e) const {
  if (e < 0) fail(Errc::Internal, "negative exponent");
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

bool Poly::operator<(const Poly& o) const {
  if (vars_ != o.vars_) return vars_ < o.vars_;
  return terms_ < o.terms_;
}

Poly Poly::derivative(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return Poly();
  size_t i = it - vars_.begin();
  Poly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exps ne = e;
    ne[i] -= 1;
    r.terms_.emplace(std::move(ne), c * e[i]);
  }
  r.normalize();
  return r;
}

Poly Poly::substitute(const std::map<std::string, Poly>& subs) const {
  Poly result;
  std::vector<std::vector<Poly>> powers(vars_.size());  // powers[i][k] = image(vars_[i])^k
  std::vector<const Poly*> images(vars_.size(), nullptr);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = subs.find(vars_[i]);
    if (it != subs.end()) images[i] = &it->second;
  }
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!images[i]) {
        term *= Poly::variable(vars_[i]).pow(e[i]);
        continue;
      }
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly::constant(1));
      while ((long)pw.size() <= e[i]) pw.push_back(pw.back() * *images[i]);
      term *= pw[e[i]];
    }
    result += term;
  }
  return result;
}

Rational Poly::eval(const std::map<std::string, Rational>& values) const {
  Rational r(0);
  std::vector<Rational> vals(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = values.find(vars_[i]);
    if (it == values.end()) fail(Errc::Internal, "eval: unbound variable " + vars_[i]);
    vals[i] = it->second;
  }
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term *= vals[i];
    r += term;
  }
  return r;
}

std::vector<Poly> Poly::coeffs_in(const std::string& var) const {
  long d = degree_in(var);
  if (is_zero()) return {};
  std::vector<Poly> out(d + 1);
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) {
    out[0] = *this;
    return out;
  }
  size_t vi = it - vars_.begin();
  for (const auto& [e, c] : terms_) {
    Exps ne = e;
    long k = ne[vi];
    ne[vi] = 0;
    Poly mono;
    mono.vars_ = vars_;
    mono.terms_.emplace(std::move(ne), c);
    mono.normalize();
    out[k] += mono;
  }
  return out;
}

Poly Poly::from_coeffs_in(const std::string& var, const std::vector<Poly>& coeffs) {
  Poly r;
  Poly x = Poly::variable(var);
  for (size_t k = 0; k < coeffs.size(); ++k) r += coeffs[k] * x.pow(k);
  return r;
}

std::vector<Rational> Poly::dense_univariate(const std::string& var) const {
  for (const auto& v : vars_)
    if (v != var) fail(Errc::Internal, "dense_univariate: extra variable " + v + " in " + str());
  long d = degree_in(var);
  std::vector<Rational> out(std::max<long>(d + 1, 1), Rational(0));
  if (is_zero()) return {Rational(0)};
  for (const auto& [e, c] : terms_) out[e.empty() ? 0 : e[0]] = c;
  return out;
}

Poly Poly::homogenize(const std::string& newvar, long degree) const {
  if (uses(newvar)) fail(Errc::Internal, "homogenize: variable already used");
  Poly r;
  Poly w = Poly::variable(newvar);
  for (const auto& [e, c] : terms_) {
    long td = std::accumulate(e.begin(), e.end(), 0L);
    if (td > degree) fail(Errc::Internal, "homogenize: degree too small");
    Poly mono;
    mono.vars_ = vars_;
    mono.terms_.emplace(e, c);
    mono.normalize();
    r += mono * w.pow(degree - td);
  }
  return r;
}

Poly Poly::dehomogenize(const std::string& var) const {
  return substitute({{var, Poly::constant(1)}});
}

Poly Poly::truncate_total_degree(long max_degree) const {
  Poly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0L) <= max_degree) r.terms_.emplace(e, c);
  r.normalize();
  return r;
}

Poly Poly::shift(const std::map<std::string, Rational>& offsets) const {
  std::map<std::string, Poly> subs;
  for (const auto& [v, c] : offsets) subs[v] = Poly::variable(v) + Poly::constant(c);
  return substitute(subs);
}

long Poly::monomial_valuation(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (is_zero() || it == vars_.end()) return 0;
  size_t vi = it - vars_.begin();
  long m = -1;
  for (const auto& [e, c] : terms_) m = (m < 0) ? e[vi] : std::min<long>(m, e[vi]);
  return std::max<long>(m, 0);
}

// grevlex: higher total degree wins; ties broken by the *smaller* exponent in
// the last differing variable winning.
static bool grevlex_less(const Exps& a, const Exps& b) {
  long da = std::accumulate(a.begin(), a.end(), 0L), db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Poly Poly::primitive_normalized() const {
  if (is_zero()) return *this;
  Integer num_gcd(0), den_lcm(1);
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational scale = Rational(den_lcm) / Rational(num_gcd);
  const Exps* lead = &terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    if (grevlex_less(*lead, e)) lead = &e;
  if (terms_.at(*lead) * scale < 0) scale = -scale;
  return *this * scale;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::vector<const std::pair<const Exps, Rational>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return grevlex_less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (auto* t : order) {
    Rational c = t->second;
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) c = -c;
    first = false;
    std::vector<std::string> parts;
    bool all_zero = std::all_of(t->first.begin(), t->first.end(), [](int e) { return e == 0; });
    if (c != 1 || all_zero) parts.push_back(to_string(c));
    for (size_t i = 0; i < t->first.size(); ++i) {
      int e = t->first[i];
      if (e == 0) continue;
      parts.push_back(e == 1 ? vars_[i] : vars_[i] + "^" + std::to_string(e));
    }
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) os << "*";
      os << parts[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Division / gcd

bool try_exact_div(const Poly& a, const Poly& b, Poly& quot) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "exact_div by zero");
  if (a.is_zero()) {
    quot = Poly();
    return true;
  }
  if (b.is_constant()) {
    quot = a * (Rational(1) / b.constant_value());
    return true;
  }
  // Recursive long division in the first variable of b.
  const std::string main = b.vars().front();
  std::vector<Poly> A = a.coeffs_in(main);
  std::vector<Poly> B = b.coeffs_in(main);
  long da = (long)A.size() - 1, db = (long)B.size() - 1;
  if (da < db) return false;
  std::vector<Poly> Q(da - db + 1);
  while (da >= db) {
    if (A[da].is_zero()) {
      --da;
      continue;
    }
    Poly qc;
    if (!try_exact_div(A[da], B[db], qc)) return false;
    Q[da - db] = qc;
    for (long i = 0; i <= db; ++i) A[da - db + i] -= qc * B[i];
    if (!A[da].is_zero()) return false;
    --da;
  }
  for (long i = 0; i < db; ++i)
    if (!A[i].is_zero()) return false;
  quot = Poly::from_coeffs_in(main, Q);
  return true;
}

Poly exact_div(const Poly& a, const Poly& b) {
  Poly q;
  if (!try_exact_div(a, b, q))
    fail(Errc::Internal, "exact_div: not divisible: (" + a.str() + ") / (" + b.str() + ")");
  return q;
}

// Univariate gcd over Q by the primitive PRS over the integers; keeps the
// coefficient sizes under control where monic rational Euclid blows up.
static void make_primitive_dense(std::vector<Rational>& p) {
  Integer num_gcd(0), den_lcm(1);
  for (const auto& c : p) {
    if (c == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (num_gcd == 0) return;
  Rational scale = Rational(den_lcm) / Rational(num_gcd);
  for (auto& c : p) c *= scale;
}

static Poly gcd_univariate(const Poly& a, const Poly& b, const std::string& var) {
  std::vector<Rational> A = a.dense_univariate(var), B = b.dense_univariate(var);
  auto deg = [](const std::vector<Rational>& p) {
    long d = (long)p.size() - 1;
    while (d >= 0 && p[d] == 0) --d;
    return d;
  };
  make_primitive_dense(A);
  make_primitive_dense(B);
  if (deg(A) < deg(B)) std::swap(A, B);
  while (deg(B) >= 0) {
    long db = deg(B);
    long da = deg(A);
    while (da >= db) {
      // A <- lc(B) * A - lc(A) * x^(da-db) * B, integral throughout.
      Rational la = A[da], lb = B[db];
      for (long i = 0; i <= da; ++i) A[i] *= lb;
      for (long i = 0; i <= db; ++i) A[da - db + i] -= la * B[i];
      A[da] = 0;
      da = deg(A);
    }
    make_primitive_dense(A);
    std::swap(A, B);
  }
  long da = deg(A);
  if (da < 0) return Poly();
  Poly g;
  Poly x = Poly::variable(var);
  for (long i = 0; i <= da; ++i) g += Poly::constant(A[i]) * x.pow(i);
  return g.primitive_normalized();
}

// Pseudo-remainder of a by b in the main variable: repeated leading-term
// cancellation r <- lc(b)*r - lc(r)*x^(dr-db)*b. Exact up to a content factor,
// which the primitive PRS normalizes away.
static Poly pseudo_rem(const Poly& a, const Poly& b, const std::string& var) {
  long db = b.degree_in(var);
  if (b.is_zero()) fail(Errc::DivisionByZero, "pseudo_rem by zero");
  Poly lb = b.coeffs_in(var)[db];
  Poly r = a;
  Poly x = Poly::variable(var);
  long dr = r.degree_in(var);
  while (!r.is_zero() && dr >= db) {
    Poly lr = r.coeffs_in(var)[dr];
    r = r * lb - lr * x.pow(dr - db) * b;
    long ndr = r.degree_in(var);
    if (!r.is_zero() && ndr >= dr) fail(Errc::Internal, "pseudo_rem did not reduce");
    dr = ndr;
  }
  return r;
}

// Content of f viewed in (R[rest])[var]: gcd of the coefficients.
static Poly content_in(const Poly& f, const std::string& var) {
  Poly c;
  for (const Poly& coeff : f.coeffs_in(var)) {
    c = gcd(c, coeff);
    if (!c.is_zero() && c.is_constant()) break;
  }
  return c.is_zero() ? Poly() : c;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? Poly() : b.primitive_normalized();
  if (b.is_zero()) return a.primitive_normalized();
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  std::vector<std::string> all;
  std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(),
                 std::back_inserter(all));
  if (all.size() == 1) return gcd_univariate(a, b, all[0]);
  const std::string& main = all[0];
  Poly ca = content_in(a, main), cb = content_in(b, main);
  Poly pa = exact_div(a, ca), pb = exact_div(b, cb);
  Poly gc = gcd(ca, cb);
  // Primitive PRS.
  Poly f = pa, g = pb;
  if (f.degree_in(main) < g.degree_in(main)) std::swap(f, g);
  while (!g.is_zero() && g.degree_in(main) > 0) {
    Poly r = pseudo_rem(f, g, main);
    f = g;
    if (r.is_zero()) {
      g = Poly();
      break;
    }
    Poly cr = content_in(r, main);
    g = exact_div(r, cr).primitive_normalized();
  }
  if (!g.is_zero()) return gc;  // PRS dropped to a nonzero element of R[rest] ⇒ prim parts coprime
  Poly prim = exact_div(f, content_in(f, main));
  return (gc * prim).primitive_normalized();
}

Poly poly_pow_mod_total_degree(const Poly& base, long e, long max_degree) {
  Poly r = Poly::constant(1);
  Poly b = base.truncate_total_degree(max_degree);
  while (e > 0) {
    if (e & 1) r = (r * b).truncate_total_degree(max_degree);
    e >>= 1;
    if (e) b = (b * b).truncate_total_degree(max_degree);
  }
  return r;
}

Poly poly_inverse_mod_total_degree(const Poly& u, long max_degree) {
  std::map<std::string, Rational> origin;
  for (const auto& v : u.vars()) origin[v] = 0;
  Rational c0 = u.eval(origin);
  if (c0 == 0) fail(Errc::DivisionByZero, "series inverse of non-unit " + u.str());
  Poly g = Poly::constant(Rational(1) / c0);
  long prec = 1;
  while (prec <= max_degree) {
    prec *= 2;
    long cap = std::min(prec - 1, max_degree);
    g = (g * (Poly::constant(2) - (u.truncate_total_degree(cap) * g).truncate_total_degree(cap)))
            .truncate_total_degree(cap);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Squarefree machinery

Poly squarefree_part(const Poly& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "squarefree_part of 0");
  if (f.is_constant()) return Poly::constant(1);
  Poly g;
  for (const auto& v : f.vars()) g = gcd(g, f.derivative(v));
  Poly d = gcd(f, g);
  return exact_div(f, d).primitive_normalized();
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "is_squarefree of 0");
  if (f.vars().size() > 2) fail(Errc::Internal, "is_squarefree supports <= 2 variables");
  if (f.is_constant()) return true;
  Poly g = f;
  for (const auto& v : f.vars()) g = gcd(g, f.derivative(v));
  return g.is_constant();
}

std::vector<std::pair<Poly, long>> squarefree_decomposition(const Poly& f,
                                                            const std::string& var) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "squarefree decomposition of 0");
  std::vector<std::pair<Poly, long>> out;
  if (f.degree_in(var) <= 0) return out;
  // Yun's algorithm over Q.
  Poly fp = f.primitive_normalized();
  Poly df = fp.derivative(var);
  Poly g = gcd(fp, df);
  Poly c = exact_div(fp, g);
  Poly d = exact_div(df, g) - c.derivative(var);
  long i = 1;
  while (c.degree_in(var) > 0) {
    Poly ai = gcd(c, d);
    if (ai.degree_in(var) > 0) out.emplace_back(ai.primitive_normalized(), i);
    c = exact_div(c, ai);
    d = exact_div(d, ai) - c.derivative(var);
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational roots

static std::vector<Integer> divisors_of(const Integer& n_in) {
  Integer n = abs(n_in);
  std::vector<Integer> primes;
  std::vector<int> mult;
  Integer m = n;
  for (Integer p = 2; p * p <= m;) {
    if (m % p == 0) {
      primes.push_back(p);
      mult.push_back(0);
      while (m % p == 0) {
        m /= p;
        mult.back()++;
      }
    }
    p += (p == 2) ? 1 : 2;
  }
  if (m > 1) {
    primes.push_back(m);
    mult.push_back(1);
  }
  std::vector<Integer> divs{1};
  for (size_t i = 0; i < primes.size(); ++i) {
    size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= mult[i]; ++k) {
      pk *= primes[i];
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

std::vector<std::pair<Rational, long>> rational_roots(const Poly& f, const std::string& var) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "rational_roots of 0");
  std::vector<Rational> c = f.dense_univariate(var);
  long d = (long)c.size() - 1;
  while (d >= 0 && c[d] == 0) --d;
  std::vector<std::pair<Rational, long>> out;
  if (d <= 0) return out;
  // Strip x = 0 roots.
  long v0 = 0;
  while (v0 <= d && c[v0] == 0) ++v0;
  if (v0 > 0) {
    out.emplace_back(Rational(0), v0);
    c.erase(c.begin(), c.begin() + v0);
    d -= v0;
  }
  if (d <= 0) return out;
  // Integer-primitive scaling.
  Integer den_lcm(1), num_gcd(0);
  for (long i = 0; i <= d; ++i) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c[i].get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c[i].get_num().get_mpz_t());
  }
  for (long i = 0; i <= d; ++i) c[i] *= Rational(den_lcm) / Rational(num_gcd);
  auto eval_at = [&](const Rational& x, const std::vector<Rational>& poly, long deg) {
    Rational acc(0);
    for (long i = deg; i >= 0; --i) acc = acc * x + poly[i];
    return acc;
  };
  std::vector<Integer> ps = divisors_of(c[0].get_num());
  std::vector<Integer> qs = divisors_of(c[d].get_num());
  std::vector<Rational> candidates;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      Rational r(p, q);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rational& x : candidates) {
    if (d <= 0) break;
    long mult = 0;
    while (d > 0 && eval_at(x, c, d) == 0) {
      // synthetic division by (X - x)
      std::vector<Rational> q(d);
      Rational carry = c[d];
      for (long i = d - 1; i >= 0; --i) {
        q[i] = carry;
        carry = c[i] + carry * x;
      }
      c = q;
      c.resize(d);
      --d;
      ++mult;
    }
    if (mult > 0) out.emplace_back(x, mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Binary forms on P^1

static void check_binary(const Poly& f, const std::string& svar, const std::string& tvar) {
  for (const auto& v : f.vars())
    if (v != svar && v != tvar)
      fail(Errc::Internal, "not a binary form in (" + svar + "," + tvar + "): " + f.str());
  if (!f.is_homogeneous()) fail(Errc::Internal, "binary form not homogeneous: " + f.str());
}

long ord_at(const Poly& f, const std::string& svar, const std::string& tvar, const PointP1& q) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "ord_at of the zero polynomial");
  check_binary(f, svar, tvar);
  long deg = f.total_degree();
  // Dehomogenize with respect to t: p(x) = f(x, 1), x = s/t.
  Poly p = f.substitute({{svar, Poly::variable("#x")}, {tvar, Poly::constant(1)}});
  long dp = p.total_degree();
  if (q.is_infinity()) return deg - std::max<long>(dp, 0);
  std::vector<Rational> c = p.dense_univariate("#x");
  long d = (long)c.size() - 1;
  long mult = 0;
  auto eval_at = [&](const Rational& x, long dd) {
    Rational acc(0);
    for (long i = dd; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  while (d >= 0 && eval_at(q.s, d) == 0) {
    if (d == 0) fail(Errc::Internal, "ord_at: unreachable zero constant");
    std::vector<Rational> quot(d);
    Rational carry = c[d];
    for (long i = d - 1; i >= 0; --i) {
      quot[i] = carry;
      carry = c[i] + carry * q.s;
    }
    c = quot;
    --d;
    ++mult;
  }
  return mult;
}

BinaryFactorization factor_binary_form(const Poly& f, const std::string& svar,
                                       const std::string& tvar) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "factor_binary_form of 0");
  check_binary(f, svar, tvar);
  BinaryFactorization out;
  out.total_degree = f.total_degree();
  Poly p = f.substitute({{svar, Poly::variable("#x")}, {tvar, Poly::constant(1)}});
  long inf_mult = out.total_degree - std::max<long>(p.total_degree(), 0);
  if (p.is_zero()) inf_mult = out.total_degree;  // f = c * s^deg
  if (inf_mult > 0) out.rational_points.emplace_back(PointP1::infinity(), inf_mult);
  if (p.is_zero() || p.is_constant()) return out;
  for (const auto& [sq, mult] : squarefree_decomposition(p, "#x")) {
    long deg = sq.degree_in("#x");
    long rational_count = 0;
    for (const auto& [root, m] : rational_roots(sq, "#x")) {
      out.rational_points.emplace_back(PointP1::affine(root), mult);
      rational_count += m;  // m == 1: sq is squarefree
    }
    if (deg > rational_count) out.irrational_blocks.emplace_back(deg - rational_count, mult);
  }
  std::sort(out.rational_points.begin(), out.rational_points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace omega
