// Univariate rational functions over Q, normalized (reduced, monic
// denominator). These are the coefficients of pulled-back Hasse-Schmidt forms
// over the function field of P^1.
#pragma once

#include <string>

#include "omega/poly.hpp"

namespace omega {

class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly::constant(1)), var_("t") {}
  RatFunc(Poly num, Poly den, std::string var);
  static RatFunc from_poly(const Poly& p, std::string var);
  static RatFunc constant(const Rational& c, std::string var = "t");
  static RatFunc variable(std::string var);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::string& var() const { return var_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator*(const Rational& k) const;
  RatFunc pow(long e) const;  // e may be negative
  RatFunc inverse() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // Valuation at a point of P^1 (ord of num minus ord of den; at [1:0] it is
  // deg(den) - deg(num)). Requires a nonzero function.
  long ord_at(const PointP1& q) const;
  Rational eval(const Rational& x) const;  // throws DivisionByZero at a pole
  RatFunc compose(const RatFunc& inner) const;
  RatFunc derivative() const;

  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
  std::string var_;
};

inline RatFunc operator*(const Rational& k, const RatFunc& f) { return f * k; }

}  // namespace omega
