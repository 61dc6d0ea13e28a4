// The graded Hasse-Schmidt differential algebra of order m over a chart
// coordinate ring, over the function field of P^1, and over truncated power
// series. Elements are expanded on the monomial basis prod d_p(x_q)^{h_pq};
// d_k of anything is computed by the universal-substitution rule
//   d_k(g) = [s^k] g(x + d_1x*s + ... + d_mx*s^m)  in  HS[s]/(s^{m+1}),
// the unique rule compatible with additivity and the Leibniz relation.
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "omega/coef.hpp"
#include "omega/poly.hpp"
#include "omega/ratfunc.hpp"
#include "omega/series.hpp"

namespace omega {

// Exponent matrix of a basis monomial: rows p = 1..m (derivation order),
// columns q = 1..n (chart coordinate). Weighted degree is sum p * h_pq.
struct HsMonomial {
  int m = 0, n = 0;
  std::vector<int> e;  // row-major, size m*n

  HsMonomial() = default;
  HsMonomial(int m_, int n_) : m(m_), n(n_), e(m_ * n_, 0) {}
  int at(int p, int q) const { return e[(p - 1) * n + q]; }      // q is 0-based
  int& at(int p, int q) { return e[(p - 1) * n + q]; }
  long weighted_degree() const {
    long d = 0;
    for (int p = 1; p <= m; ++p)
      for (int q = 0; q < n; ++q) d += (long)p * at(p, q);
    return d;
  }
  bool is_scalar() const {
    for (int x : e)
      if (x) return false;
    return true;
  }
  friend HsMonomial operator*(const HsMonomial& a, const HsMonomial& b) {
    HsMonomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
  }
  bool operator<(const HsMonomial& o) const { return e < o.e; }  // lex on flattened matrix
  bool operator==(const HsMonomial& o) const { return e == o.e; }
};

template <class C>
class HsElem {
 public:
  HsElem() = default;
  HsElem(int m, std::vector<std::string> coords) : m_(m), coords_(std::move(coords)) {}
  static HsElem scalar(int m, std::vector<std::string> coords, const C& value) {
    HsElem r(m, std::move(coords));
    if (!coef_is_zero(value)) r.terms_.emplace(HsMonomial(m, (int)r.coords_.size()), value);
    return r;
  }
  // d_p(coords[q]) as a basis element.
  static HsElem generator(int m, std::vector<std::string> coords, int p, int q, const C& one) {
    HsElem r(m, std::move(coords));
    HsMonomial mono(m, (int)r.coords_.size());
    mono.at(p, q) = 1;
    r.terms_.emplace(std::move(mono), one);
    return r;
  }

  int order() const { return m_; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::map<HsMonomial, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool compatible(const HsElem& o) const { return m_ == o.m_ && coords_ == o.coords_; }

  HsElem operator-() const {
    HsElem r = *this;
    for (auto& [k, v] : r.terms_) v = -v;
    return r;
  }
  friend HsElem operator+(const HsElem& a, const HsElem& b) {
    if (a.terms_.empty() && a.coords_.empty()) return b;
    if (b.terms_.empty() && b.coords_.empty()) return a;
    if (!a.compatible(b)) fail(Errc::Internal, "HS elements on different charts/orders");
    HsElem r = a;
    for (const auto& [k, v] : b.terms_) {
      auto [it, inserted] = r.terms_.emplace(k, v);
      if (!inserted) it->second = it->second + v;
    }
    r.prune();
    return r;
  }
  friend HsElem operator-(const HsElem& a, const HsElem& b) { return a + (-b); }
  friend HsElem operator*(const HsElem& a, const HsElem& b) {
    if (!a.compatible(b)) fail(Errc::Internal, "HS elements on different charts/orders");
    HsElem r(a.m_, a.coords_);
    for (const auto& [ka, va] : a.terms_)
      for (const auto& [kb, vb] : b.terms_) {
        HsMonomial k = ka * kb;
        C v = va * vb;
        auto [it, inserted] = r.terms_.emplace(std::move(k), v);
        if (!inserted) it->second = it->second + v;
      }
    r.prune();
    return r;
  }
  HsElem scaled(const C& c) const {
    HsElem r(m_, coords_);
    if (coef_is_zero(c)) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    r.prune();
    return r;
  }
  bool operator==(const HsElem& o) const {
    return m_ == o.m_ && coords_ == o.coords_ && terms_ == o.terms_;
  }
  bool operator!=(const HsElem& o) const { return !(*this == o); }

  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_scalar());
  }
  C scalar_value(const C& zero) const {
    if (terms_.empty()) return zero;
    if (!is_scalar()) fail(Errc::Internal, "HS element is not a scalar");
    return terms_.begin()->second;
  }

  // Weighted homogeneity; degree is -1 for the zero element.
  bool weighted_homogeneous(long* degree = nullptr) const {
    if (terms_.empty()) {
      if (degree) *degree = -1;
      return true;
    }
    long d = terms_.begin()->first.weighted_degree();
    for (const auto& [k, v] : terms_)
      if (k.weighted_degree() != d) return false;
    if (degree) *degree = d;
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coef_str(v) << ")";
      for (int p = 1; p <= m_; ++p)
        for (int q = 0; q < (int)coords_.size(); ++q) {
          int e = k.at(p, q);
          if (e == 0) continue;
          os << "*d" << p << "(" << coords_[q] << ")";
          if (e > 1) os << "^" << e;
        }
    }
    return os.str();
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = coef_is_zero(it->second) ? terms_.erase(it) : std::next(it);
  }
  int m_ = 0;
  std::vector<std::string> coords_;
  std::map<HsMonomial, C> terms_;
};

// --- jets: elements of HS[s]/(s^{m+1}) --------------------------------------

template <class C>
struct Jet {
  std::vector<HsElem<C>> c;  // size m+1

  int order() const { return (int)c.size() - 1; }
  static Jet zero(int m, const std::vector<std::string>& coords) {
    Jet j;
    j.c.assign(m + 1, HsElem<C>(m, coords));
    return j;
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r = Jet::zero(a.order(), a.c[0].coords());
    for (int i = 0; i <= a.order(); ++i)
      for (int j = 0; i + j <= a.order(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    return r;
  }
  // Inverse when the s^0 part is an invertible scalar.
  Jet inverse() const {
    C zero_hint{};
    C a0 = c[0].scalar_value(zero_hint);
    C b0 = coef_inverse(a0);
    Jet r = Jet::zero(order(), c[0].coords());
    HsElem<C> b0e = HsElem<C>::scalar(order(), c[0].coords(), b0);
    r.c[0] = b0e;
    for (int k = 1; k <= order(); ++k) {
      HsElem<C> acc(order(), c[0].coords());
      for (int i = 1; i <= k; ++i) acc = acc + c[i] * r.c[k - i];
      r.c[k] = -(b0e * acc);
    }
    return r;
  }
};

// Evaluate a polynomial at jets, one per variable.
template <class C>
Jet<C> jet_eval_poly(const Poly& f, const std::map<std::string, Jet<C>>& args, int m,
                     const std::vector<std::string>& coords, const C& one) {
  Jet<C> acc = Jet<C>::zero(m, coords);
  std::map<std::string, std::vector<Jet<C>>> powers;
  for (const auto& [e, coeff] : f.terms()) {
    Jet<C> term = Jet<C>::zero(m, coords);
    term.c[0] = HsElem<C>::scalar(m, coords, one * coeff);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = args.find(f.vars()[i]);
      if (it == args.end()) fail(Errc::Internal, "jet_eval_poly: unbound variable " + f.vars()[i]);
      auto& pw = powers[f.vars()[i]];
      if (pw.empty()) pw.push_back(it->second);
      while ((long)pw.size() < e[i]) pw.push_back(pw.back() * it->second);
      term = term * pw[e[i] - 1];
    }
    acc = acc + term;
  }
  return acc;
}

// --- the operations over k(t) ------------------------------------------------

// Jet of the affine parameter itself: t + d1(t) s + ... + dm(t) s^m.
Jet<RatFunc> parameter_jet(const std::string& var, int m);
// Jet of a rational function of the parameter.
Jet<RatFunc> jet_of_ratfunc(const RatFunc& g, int m);

// d_k(f(x(t))) for a polynomial chart function under rational substitutions.
HsElem<RatFunc> hs_derive(const Poly& f_chart, const std::map<std::string, RatFunc>& subs, int k,
                          int m);
// d_k(g) for g a rational function of the parameter.
HsElem<RatFunc> hs_derive(const RatFunc& g, int k, int m);
// Symbolic d_k of a polynomial in its own variables (coefficients stay Poly).
HsElem<Poly> hs_derive_symbolic(const Poly& f, int k, int m);
// Same with an explicit chart coordinate list (must contain f's variables).
HsElem<Poly> hs_derive_symbolic_on(const Poly& f, int k, int m,
                                   const std::vector<std::string>& coords);

// Pullback of a chart form along rational substitutions x_q -> subs[x_q].
// ImageOutsideChart if some substitution is missing.
HsElem<RatFunc> hs_pullback(const HsElem<Poly>& form, const std::map<std::string, RatFunc>& subs);
// Same with truncated power series substitutions (local/implicit analysis).
HsElem<Series> hs_pullback_series(const HsElem<Poly>& form,
                                  const std::map<std::string, Series>& subs);

// Reparametrization t -> rho(t'): the functoriality route g^* o f^*.
HsElem<RatFunc> hs_compose(const HsElem<RatFunc>& pulled, const RatFunc& rho);

// Valuation of the pulled-back form at a point of P^1: min over basis
// monomials of ord(coefficient); nullopt means the zero section (order inf).
// At [1:0] the form is re-expanded in the opposite chart of P^1 first.
std::optional<long> vanishing_order(const HsElem<RatFunc>& pulled, const PointP1& q);

// The recorded global denominator: the monic lcm of all coefficient
// denominators, so that denom * pulled has polynomial coefficients.
Poly hs_common_denominator(const HsElem<RatFunc>& pulled);

// Weighted-homogeneity gate used by the expression evaluator (hs_reduce).
template <class C>
long require_weighted_homogeneous(const HsElem<C>& x) {
  long r = -1;
  if (!x.weighted_homogeneous(&r))
    fail(Errc::InhomogeneousDegree, "mixed weighted degrees in " + x.str());
  return r;
}

}  // namespace omega
