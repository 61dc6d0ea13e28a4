#include "omega/series.hpp"

#include <algorithm>
#include <sstream>

namespace omega {

Series::Series(std::string var, long order) : var_(std::move(var)), order_(order) {
  if (order_ < 0) fail(Errc::Internal, "series order must be >= 0");
  c_.assign(order_ + 1, Rational(0));
}

Series Series::constant(const Rational& c, std::string var, long order) {
  Series s(std::move(var), order);
  s.c_[0] = c;
  return s;
}

Series Series::variable(std::string var, long order) {
  Series s(std::move(var), order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

Series Series::from_coeffs(std::string var, std::vector<Rational> coeffs, long order) {
  Series s(std::move(var), order);
  for (long i = 0; i <= order && i < (long)coeffs.size(); ++i) s.c_[i] = coeffs[i];
  return s;
}

bool Series::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

long Series::lowest_order() const {
  for (long i = 0; i <= order_; ++i)
    if (c_[i] != 0) return i;
  return -1;
}

static void check_compatible(const Series& a, const Series& b) {
  if (a.var() != b.var())
    fail(Errc::Internal, "series variable mismatch: " + a.var() + " vs " + b.var());
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Series operator+(const Series& a, const Series& b) {
  check_compatible(a, b);
  Series r(a.var(), std::min(a.order(), b.order()));
  for (long i = 0; i <= r.order_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  check_compatible(a, b);
  Series r(a.var(), std::min(a.order(), b.order()));
  for (long i = 0; i <= r.order_; ++i)
    for (long j = 0; i + j <= r.order_ && j <= b.order(); ++j)
      if (i <= a.order()) r.c_[i + j] += a.c_[i] * b.c_[j];
  return r;
}

Series Series::operator*(const Rational& k) const {
  Series r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

Series Series::pow(long e) const {
  if (e < 0) fail(Errc::Internal, "negative series exponent");
  Series r = Series::constant(1, var_, order_);
  Series base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Series Series::inverse() const {
  if (c_[0] == 0) fail(Errc::DivisionByZero, "series inverse of non-unit");
  Series r(var_, order_);
  r.c_[0] = Rational(1) / c_[0];
  for (long n = 1; n <= order_; ++n) {
    Rational acc(0);
    for (long k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
    r.c_[n] = -acc / c_[0];
  }
  return r;
}

bool Series::operator==(const Series& o) const {
  if (var_ != o.var_) return false;
  long n = std::min(order_, o.order_);
  for (long i = 0; i <= n; ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

Series Series::truncated(long order) const {
  Series r(var_, std::min(order, order_));
  for (long i = 0; i <= r.order_; ++i) r.c_[i] = c_[i];
  return r;
}

Series Series::derivative() const {
  if (order_ == 0) return Series(var_, 0);
  Series r(var_, order_ - 1);
  for (long i = 1; i <= order_; ++i) r.c_[i - 1] = c_[i] * i;
  return r;
}

Series Series::integral() const {
  Series r(var_, order_ + 1);
  for (long i = 0; i <= order_; ++i) r.c_[i + 1] = c_[i] / Rational(i + 1);
  return r;
}

Series Series::compose(const Series& inner) const {
  check_compatible(*this, inner);
  if (inner.c_[0] != 0)
    fail(Errc::Internal, "series composition requires zero constant term in the inner series");
  long n = std::min(order_, inner.order());
  Series r = Series::constant(c_[0], var_, n);
  Series p = Series::constant(1, var_, n);
  for (long k = 1; k <= order_ && k <= n; ++k) {
    p = p * inner.truncated(n);
    r = r + p * c_[k];
  }
  return r;
}

std::string Series::str() const {
  std::ostringstream os;
  bool first = true;
  for (long i = 0; i <= order_; ++i) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    Rational a = abs(c);
    if (a != 1 || i == 0) os << to_string(a) << (i > 0 ? "*" : "");
    if (i >= 1) os << var_;
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  os << " + O(" << var_ << "^" << order_ + 1 << ")";
  return os.str();
}

Series eval_poly_at_series(const Poly& p, const std::map<std::string, Series>& args) {
  if (args.empty()) fail(Errc::Internal, "eval_poly_at_series needs at least one argument");
  const Series& model = args.begin()->second;
  long order = model.order();
  for (const auto& [k, s] : args) order = std::min(order, s.order());
  Series acc(model.var(), order);
  std::map<std::string, std::vector<Series>> powers;
  for (const auto& [e, c] : p.terms()) {
    Series term = Series::constant(c, model.var(), order);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = args.find(p.vars()[i]);
      if (it == args.end()) fail(Errc::Internal, "unbound variable " + p.vars()[i]);
      auto& pw = powers[p.vars()[i]];
      if (pw.empty()) pw.push_back(Series::constant(1, model.var(), order));
      while ((long)pw.size() <= e[i]) pw.push_back(pw.back() * it->second);
      term = term * pw[e[i]];
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace omega
