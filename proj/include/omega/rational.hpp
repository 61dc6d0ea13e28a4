// Exact rational scalars. GMP's mpq_class already keeps the canonical form
// (gcd-reduced, positive denominator); this header adds parsing/printing and
// the few integer helpers the rest of the library wants.
#pragma once

#include <gmpxx.h>

#include <string>

#include "omega/error.hpp"

namespace omega {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Rational& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p())
    fail(Errc::Internal, "rational does not fit in a machine integer: " + r.get_str());
  return r.get_num().get_si();
}

// Accepts "p", "-p", "p/q" with optional sign; q > 0 after normalization.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0)
    fail(Errc::SyntaxError, "bad rational literal '" + text + "'");
  if (r.get_den() == 0) fail(Errc::DivisionByZero, "zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Floor of log-free comparison helpers used by truncated counting: c >= 1/eps
// as an exact comparison c*eps >= 1.
inline bool at_least_inverse(long c, const Rational& eps) { return Rational(c) * eps >= 1; }

}  // namespace omega
