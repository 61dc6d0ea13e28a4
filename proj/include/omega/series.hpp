// Truncated power series in one variable over Q. Every value records the
// order through which its coefficients are valid; arithmetic propagates the
// minimum of the operand orders.
#pragma once

#include <string>
#include <vector>

#include "omega/poly.hpp"
#include "omega/rational.hpp"

namespace omega {

inline constexpr long kDefaultSeriesOrder = 24;

class Series {
 public:
  Series() : var_("t"), order_(0), c_{Rational(0)} {}
  Series(std::string var, long order);  // zero series valid through x^order
  static Series constant(const Rational& c, std::string var, long order);
  static Series variable(std::string var, long order);
  static Series from_coeffs(std::string var, std::vector<Rational> coeffs, long order);

  const std::string& var() const { return var_; }
  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(long k) const { return k <= order_ ? c_[k] : Rational(0); }

  bool is_zero() const;             // zero through the recorded order
  long lowest_order() const;        // index of first nonzero coeff; -1 if none
  bool is_unit() const { return c_[0] != 0; }

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series operator*(const Rational& k) const;
  Series pow(long e) const;
  Series inverse() const;           // requires unit constant term
  bool operator==(const Series& o) const;  // same var, same coeffs through min order

  Series truncated(long order) const;
  Series derivative() const;        // order drops by one
  Series integral() const;          // antiderivative with constant 0; order rises by one
  // Substitute inner into this; inner must have zero constant term.
  Series compose(const Series& inner) const;

  std::string str() const;

 private:
  std::string var_;
  long order_;
  std::vector<Rational> c_;  // size order_+1
};

inline Series operator*(const Rational& k, const Series& s) { return s * k; }

// Evaluate a polynomial at series arguments (one per variable of p); the
// result's variable/order come from the arguments (all must agree).
Series eval_poly_at_series(const Poly& p, const std::map<std::string, Series>& args);

}  // namespace omega
