// Sparse multivariate polynomials over the exact rationals, plus the
// univariate/bivariate algebra the rest of the library runs on: gcd,
// squarefree decomposition, rational roots, orders of vanishing of binary
// forms at points of P^1.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega/error.hpp"
#include "omega/rational.hpp"

namespace omega {

using Exps = std::vector<int>;

// A point of P^1, always normalized to [x:1] or [1:0].
struct PointP1 {
  Rational s, t;

  PointP1() : s(0), t(1) {}
  PointP1(Rational s_, Rational t_);
  static PointP1 infinity() { return PointP1(1, 0); }
  static PointP1 affine(const Rational& x) { return PointP1(x, 1); }
  bool is_infinity() const { return t == 0; }
  bool operator==(const PointP1& o) const { return s == o.s && t == o.t; }
  bool operator<(const PointP1& o) const;
  std::string str() const;
};

class Poly {
 public:
  Poly() = default;  // zero polynomial
  static Poly constant(const Rational& c);
  static Poly constant(long c) { return constant(Rational(c)); }
  static Poly variable(const std::string& name);
  static Poly from_terms(std::vector<std::string> vars, std::map<Exps, Rational> terms);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exps, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  Rational constant_value() const;        // requires is_constant()
  long total_degree() const;              // -1 sentinel for the zero polynomial
  long degree_in(const std::string& var) const;
  bool is_homogeneous(long* degree = nullptr) const;
  bool uses(const std::string& var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  Poly operator*(const Rational& c) const;
  Poly pow(long e) const;
  bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;  // arbitrary total order (for map keys)

  Poly derivative(const std::string& var) const;
  Poly substitute(const std::map<std::string, Poly>& subs) const;
  Rational eval(const std::map<std::string, Rational>& values) const;

  // View as univariate in `var` with Poly coefficients (ascending, trailing
  // zero coefficients trimmed so size() == degree_in(var)+1; empty for zero).
  std::vector<Poly> coeffs_in(const std::string& var) const;
  static Poly from_coeffs_in(const std::string& var, const std::vector<Poly>& coeffs);
  // Dense coefficient list for a polynomial using no variable but `var`.
  std::vector<Rational> dense_univariate(const std::string& var) const;

  Poly homogenize(const std::string& newvar, long degree) const;
  Poly dehomogenize(const std::string& var) const;  // substitute var := 1
  Poly truncate_total_degree(long max_degree) const;
  Poly shift(const std::map<std::string, Rational>& offsets) const;  // x -> x + c

  // Canonical scaling: coprime integer coefficients, grevlex-leading one positive.
  Poly primitive_normalized() const;
  // Exponent of `var` dividing every term (0 for the zero polynomial).
  long monomial_valuation(const std::string& var) const;

  std::string str() const;

 private:
  void normalize();
  static void align(const Poly& a, const Poly& b, Poly& a2, Poly& b2);

  std::vector<std::string> vars_;        // sorted, each occurring in some term
  std::map<Exps, Rational> terms_;       // exponent vector (aligned with vars_) -> nonzero coeff
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// --- algebra ---------------------------------------------------------------

Poly gcd(const Poly& a, const Poly& b);
Poly exact_div(const Poly& a, const Poly& b);       // throws Internal if not divisible
bool try_exact_div(const Poly& a, const Poly& b, Poly& quot);
Poly poly_pow_mod_total_degree(const Poly& base, long e, long max_degree);
Poly poly_inverse_mod_total_degree(const Poly& u, long max_degree);  // u(0) != 0

bool is_squarefree(const Poly& f);                   // one or two variables; ZeroPolynomial on 0
Poly squarefree_part(const Poly& f);
// Univariate squarefree decomposition (Yun): f ~ prod a_i^{m_i}, a_i squarefree
// pairwise coprime, returned with multiplicities ascending. Constant input -> {}.
std::vector<std::pair<Poly, long>> squarefree_decomposition(const Poly& f, const std::string& var);
// All rational roots of a nonzero univariate polynomial, with multiplicities.
std::vector<std::pair<Rational, long>> rational_roots(const Poly& f, const std::string& var);

// --- binary forms in two named variables -----------------------------------

// Order of vanishing of a nonzero homogeneous binary form at a point of P^1.
long ord_at(const Poly& f, const std::string& svar, const std::string& tvar, const PointP1& q);

struct BinaryFactorization {
  std::vector<std::pair<PointP1, long>> rational_points;  // root, multiplicity
  std::vector<std::pair<long, long>> irrational_blocks;   // (degree, multiplicity)
  long total_degree = 0;
};
// Full decomposition of a nonzero homogeneous binary form over Q: rational
// roots (including [1:0]) and degree bookkeeping for the rootless parts.
BinaryFactorization factor_binary_form(const Poly& f, const std::string& svar,
                                       const std::string& tvar);

}  // namespace omega
