// Uniform helpers over the coefficient rings the generic code is instantiated
// with (Rational, Poly, RatFunc, Series).
#pragma once

#include "omega/poly.hpp"
#include "omega/ratfunc.hpp"
#include "omega/series.hpp"

namespace omega {

template <class C>
inline bool coef_is_zero(const C& c) {
  return c.is_zero();
}
template <>
inline bool coef_is_zero<Rational>(const Rational& c) {
  return c == 0;
}

template <class C>
inline C coef_one();
template <>
inline Rational coef_one<Rational>() {
  return Rational(1);
}
template <>
inline Poly coef_one<Poly>() {
  return Poly::constant(1);
}
template <>
inline RatFunc coef_one<RatFunc>() {
  return RatFunc::constant(1);
}

template <class C>
inline C coef_inverse(const C& c);
template <>
inline Rational coef_inverse<Rational>(const Rational& c) {
  if (c == 0) fail(Errc::DivisionByZero, "inverse of zero");
  return Rational(1) / c;
}
template <>
inline Poly coef_inverse<Poly>(const Poly& c) {
  if (!c.is_constant() || c.is_zero())
    fail(Errc::DivisionByZero, "polynomial coefficient not invertible: " + c.str());
  return Poly::constant(Rational(1) / c.constant_value());
}
template <>
inline RatFunc coef_inverse<RatFunc>(const RatFunc& c) {
  return c.inverse();
}
template <>
inline Series coef_inverse<Series>(const Series& c) {
  return c.inverse();
}

template <class C>
inline std::string coef_str(const C& c) {
  return c.str();
}
template <>
inline std::string coef_str<Rational>(const Rational& c) {
  return to_string(c);
}

}  // namespace omega
