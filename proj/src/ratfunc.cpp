#include "omega/ratfunc.hpp"

namespace omega {

RatFunc::RatFunc(Poly num, Poly den, std::string var)
    : num_(std::move(num)), den_(std::move(den)), var_(std::move(var)) {
  if (den_.is_zero()) fail(Errc::DivisionByZero, "rational function with zero denominator");
  for (const auto& v : num_.vars())
    if (v != var_) fail(Errc::Internal, "RatFunc numerator uses foreign variable " + v);
  for (const auto& v : den_.vars())
    if (v != var_) fail(Errc::Internal, "RatFunc denominator uses foreign variable " + v);
  normalize();
}

RatFunc RatFunc::from_poly(const Poly& p, std::string var) {
  return RatFunc(p, Poly::constant(1), std::move(var));
}

RatFunc RatFunc::constant(const Rational& c, std::string var) {
  return RatFunc(Poly::constant(c), Poly::constant(1), std::move(var));
}

RatFunc RatFunc::variable(std::string var) {
  Poly v = Poly::variable(var);
  return RatFunc(v, Poly::constant(1), std::move(var));
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  // Monic denominator.
  std::vector<Rational> d = den_.dense_univariate(var_);
  Rational lead = d.back();
  if (lead != 1) {
    num_ = num_ * (Rational(1) / lead);
    den_ = den_ * (Rational(1) / lead);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.var_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_, a.var_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_, a.var_);
}

RatFunc RatFunc::operator*(const Rational& k) const {
  RatFunc r = *this;
  r.num_ = r.num_ * k;
  if (k == 0) r.normalize();
  return r;
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r = RatFunc::constant(1, var_);
  RatFunc base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero rational function");
  return RatFunc(den_, num_, var_);
}

long RatFunc::ord_at(const PointP1& q) const {
  if (is_zero()) fail(Errc::ZeroPolynomial, "ord_at of the zero rational function");
  auto poly_ord = [&](const Poly& p) -> long {
    if (q.is_infinity()) return -std::max<long>(p.total_degree(), 0);
    if (p.is_constant()) return 0;
    Poly hom = p.homogenize("#h", p.total_degree());
    // multiplicity of the root s = q.s with t = #h as the homogenizer
    return omega::ord_at(hom, var_, "#h", q);
  };
  return poly_ord(num_) - poly_ord(den_);
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval({{var_, x}});
  if (d == 0) fail(Errc::DivisionByZero, "pole at " + to_string(x));
  return num_.eval({{var_, x}}) / d;
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
  auto eval_poly = [&](const Poly& p) {
    std::vector<Rational> c = p.dense_univariate(var_);
    RatFunc acc = RatFunc::constant(0, inner.var_);
    for (long i = (long)c.size() - 1; i >= 0; --i)
      acc = acc * inner + RatFunc::constant(c[i], inner.var_);
    return acc;
  };
  return eval_poly(num_) / eval_poly(den_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative(var_) * den_ - num_ * den_.derivative(var_), den_ * den_, var_);
}

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace omega
