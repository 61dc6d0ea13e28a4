// Binary forms sum A_j X^{r-j} Y^j with coefficients in Q or in a polynomial
// ring, and their discriminant via the resultant of the two partials. The
// normalization is pinned so that degree 2 gives A1^2 - 4*A0*A2.
#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "omega/coef.hpp"
#include "omega/poly.hpp"

namespace omega {

// Determinant by Laplace expansion with memoization on column subsets.
// Intended for the small Sylvester matrices of this library (n <= ~10).
template <class C>
C ring_det(const std::vector<std::vector<C>>& m) {
  const size_t n = m.size();
  if (n == 0) return coef_one<C>();
  std::unordered_map<unsigned long, C> memo;
  // mask = set of still-available columns; current row = n - popcount(mask).
  std::function<C(unsigned long)> go = [&](unsigned long mask) -> C {
    if (mask == 0) return coef_one<C>();
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    size_t row = n - __builtin_popcountl(mask);
    C acc{};
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
      if (!(mask & (1ul << col))) continue;
      if (!coef_is_zero(m[row][col])) {
        C sub = go(mask & ~(1ul << col));
        C term = m[row][col] * sub;
        if (sign < 0) term = -term;
        acc = acc + term;
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return go((1ul << n) - 1);
}

template <class C>
struct BinaryForm {
  long degree = 0;
  std::vector<C> coeff;  // A_0..A_degree, size degree+1

  BinaryForm() = default;
  BinaryForm(long r, std::vector<C> a) : degree(r), coeff(std::move(a)) {
    if ((long)coeff.size() != degree + 1)
      fail(Errc::Internal, "binary form needs degree+1 coefficients");
  }
  bool is_zero() const {
    for (const auto& c : coeff)
      if (!coef_is_zero(c)) return false;
    return true;
  }
};

// Resultant of two binary forms of declared degrees via the Sylvester matrix
// (valid even when leading coefficients vanish).
template <class C>
C binary_resultant(const BinaryForm<C>& p, const BinaryForm<C>& q) {
  long dp = p.degree, dq = q.degree;
  long n = dp + dq;
  std::vector<std::vector<C>> m(n, std::vector<C>(n));
  for (long i = 0; i < dq; ++i)
    for (long j = 0; j <= dp; ++j) m[i][i + j] = p.coeff[j];
  for (long i = 0; i < dp; ++i)
    for (long j = 0; j <= dq; ++j) m[dq + i][i + j] = q.coeff[j];
  return ring_det(m);
}

// disc(B) = (-1)^{r(r-1)/2} * Res(B_X, B_Y) / r^{r-2}; zero iff B has a
// repeated projective root over the algebraic closure. DegreeZero for r = 0.
template <class C>
C binary_form_discriminant(const BinaryForm<C>& b) {
  long r = b.degree;
  if (r == 0) fail(Errc::DegreeZero, "discriminant needs degree >= 1");
  if (r == 1) return coef_one<C>();
  std::vector<C> dx(r), dy(r);
  for (long j = 0; j <= r - 1; ++j) dx[j] = b.coeff[j] * Rational(r - j);
  for (long j = 1; j <= r; ++j) dy[j - 1] = b.coeff[j] * Rational(j);
  C res = binary_resultant(BinaryForm<C>(r - 1, dx), BinaryForm<C>(r - 1, dy));
  Rational scale(1);
  for (long i = 0; i < r - 2; ++i) scale *= r;
  C out = res * (Rational(1) / scale);
  if (((r * (r - 1) / 2) % 2) != 0) out = -out;
  return out;
}

}  // namespace omega
