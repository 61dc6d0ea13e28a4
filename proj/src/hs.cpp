#include "omega/hs.hpp"

#include <algorithm>

namespace omega {

Jet<RatFunc> parameter_jet(const std::string& var, int m) {
  std::vector<std::string> coords{var};
  Jet<RatFunc> j = Jet<RatFunc>::zero(m, coords);
  j.c[0] = HsElem<RatFunc>::scalar(m, coords, RatFunc::variable(var));
  for (int p = 1; p <= m; ++p)
    j.c[p] = HsElem<RatFunc>::generator(m, coords, p, 0, RatFunc::constant(1, var));
  return j;
}

Jet<RatFunc> jet_of_ratfunc(const RatFunc& g, int m) {
  const std::string& var = g.var();
  Jet<RatFunc> t = parameter_jet(var, m);
  std::map<std::string, Jet<RatFunc>> args{{var, t}};
  RatFunc one = RatFunc::constant(1, var);
  Jet<RatFunc> num = jet_eval_poly(g.num(), args, m, t.c[0].coords(), one);
  if (g.is_polynomial()) {
    Rational d = g.den().constant_value();
    for (auto& e : num.c) e = e.scaled(RatFunc::constant(Rational(1) / d, var));
    return num;
  }
  Jet<RatFunc> den = jet_eval_poly(g.den(), args, m, t.c[0].coords(), one);
  return num * den.inverse();
}

HsElem<RatFunc> hs_derive(const RatFunc& g, int k, int m) {
  if (k > m || k < 0) fail(Errc::OrderOutOfRange, "d_" + std::to_string(k) + " with order m=" +
                                                      std::to_string(m));
  return jet_of_ratfunc(g, m).c[k];
}

HsElem<RatFunc> hs_derive(const Poly& f_chart, const std::map<std::string, RatFunc>& subs, int k,
                          int m) {
  if (k > m || k < 0) fail(Errc::OrderOutOfRange, "d_" + std::to_string(k) + " with order m=" +
                                                      std::to_string(m));
  if (subs.empty()) fail(Errc::Internal, "hs_derive needs at least one substitution");
  const std::string param = subs.begin()->second.var();
  std::vector<std::string> coords{param};
  std::map<std::string, Jet<RatFunc>> jets;
  for (const auto& v : f_chart.vars()) {
    auto it = subs.find(v);
    if (it == subs.end()) fail(Errc::Internal, "hs_derive: no substitution for " + v);
    jets.emplace(v, jet_of_ratfunc(it->second, m));
  }
  RatFunc one = RatFunc::constant(1, param);
  return jet_eval_poly(f_chart, jets, m, coords, one).c[k];
}

HsElem<Poly> hs_derive_symbolic_on(const Poly& f, int k, int m,
                                   const std::vector<std::string>& coords) {
  if (k > m || k < 0) fail(Errc::OrderOutOfRange, "d_" + std::to_string(k) + " with order m=" +
                                                      std::to_string(m));
  for (const auto& v : f.vars())
    if (std::find(coords.begin(), coords.end(), v) == coords.end())
      fail(Errc::Internal, "variable " + v + " is not a chart coordinate");
  std::map<std::string, Jet<Poly>> jets;
  for (size_t q = 0; q < coords.size(); ++q) {
    Jet<Poly> j = Jet<Poly>::zero(m, coords);
    j.c[0] = HsElem<Poly>::scalar(m, coords, Poly::variable(coords[q]));
    for (int p = 1; p <= m; ++p)
      j.c[p] = HsElem<Poly>::generator(m, coords, p, (int)q, Poly::constant(1));
    jets.emplace(coords[q], j);
  }
  return jet_eval_poly(f, jets, m, coords, Poly::constant(1)).c[k];
}

HsElem<Poly> hs_derive_symbolic(const Poly& f, int k, int m) {
  std::vector<std::string> coords = f.vars();
  if (coords.empty()) coords.push_back("t");
  return hs_derive_symbolic_on(f, k, m, coords);
}

static RatFunc eval_poly_at_ratfunc(const Poly& p, const std::map<std::string, RatFunc>& subs,
                                    const std::string& var) {
  RatFunc acc = RatFunc::constant(0, var);
  std::map<std::string, std::vector<RatFunc>> powers;
  for (const auto& [e, c] : p.terms()) {
    RatFunc term = RatFunc::constant(c, var);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const std::string& v = p.vars()[i];
      auto it = subs.find(v);
      if (it == subs.end()) fail(Errc::Internal, "unbound chart variable " + v);
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(it->second);
      while ((long)pw.size() < e[i]) pw.push_back(pw.back() * it->second);
      term = term * pw[e[i] - 1];
    }
    acc = acc + term;
  }
  return acc;
}

template <class C>
static HsElem<C> hs_elem_pow(const HsElem<C>& x, long e, const HsElem<C>& one) {
  HsElem<C> r = one;
  HsElem<C> base = x;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

HsElem<RatFunc> hs_pullback(const HsElem<Poly>& form, const std::map<std::string, RatFunc>& subs) {
  if (subs.empty()) fail(Errc::ImageOutsideChart, "no substitutions defined on this chart");
  const std::string param = subs.begin()->second.var();
  const int m = form.order();
  std::vector<std::string> out_coords{param};
  // Jets of every chart coordinate.
  std::vector<Jet<RatFunc>> jets;
  for (const auto& v : form.coords()) {
    auto it = subs.find(v);
    if (it == subs.end()) fail(Errc::ImageOutsideChart, "no substitution for coordinate " + v);
    jets.push_back(jet_of_ratfunc(it->second, m));
  }
  HsElem<RatFunc> acc(m, out_coords);
  HsElem<RatFunc> one = HsElem<RatFunc>::scalar(m, out_coords, RatFunc::constant(1, param));
  for (const auto& [mono, coeff] : form.terms()) {
    HsElem<RatFunc> term = one.scaled(eval_poly_at_ratfunc(coeff, subs, param));
    for (int p = 1; p <= m; ++p)
      for (int q = 0; q < (int)form.coords().size(); ++q) {
        int e = mono.at(p, q);
        if (e > 0) term = term * hs_elem_pow(jets[q].c[p], e, one);
      }
    acc = acc + term;
  }
  return acc;
}

HsElem<Series> hs_pullback_series(const HsElem<Poly>& form,
                                  const std::map<std::string, Series>& subs) {
  if (subs.empty()) fail(Errc::ImageOutsideChart, "no series substitutions");
  const Series& model = subs.begin()->second;
  const std::string param = model.var();
  const long order = model.order();
  const int m = form.order();
  std::vector<std::string> out_coords{param};
  Series sone = Series::constant(1, param, order);
  // Parameter jet.
  Jet<Series> tj = Jet<Series>::zero(m, out_coords);
  tj.c[0] = HsElem<Series>::scalar(m, out_coords, Series::variable(param, order));
  for (int p = 1; p <= m; ++p)
    tj.c[p] = HsElem<Series>::generator(m, out_coords, p, 0, sone);
  std::map<std::string, Jet<Series>> args{{param, tj}};
  std::vector<Jet<Series>> jets;
  for (const auto& v : form.coords()) {
    auto it = subs.find(v);
    if (it == subs.end()) fail(Errc::ImageOutsideChart, "no substitution for coordinate " + v);
    // View the truncated series as a polynomial in the parameter.
    Poly sp;
    Poly x = Poly::variable(param);
    for (long i = 0; i <= it->second.order(); ++i)
      sp += Poly::constant(it->second.coeff(i)) * x.pow(i);
    jets.push_back(jet_eval_poly(sp, args, m, out_coords, sone));
  }
  HsElem<Series> acc(m, out_coords);
  HsElem<Series> one = HsElem<Series>::scalar(m, out_coords, sone);
  for (const auto& [mono, coeff] : form.terms()) {
    std::map<std::string, Series> vals;
    for (size_t q = 0; q < form.coords().size(); ++q)
      vals.emplace(form.coords()[q], subs.at(form.coords()[q]));
    Series cval = coeff.is_constant() ? Series::constant(coeff.constant_value(), param, order)
                                      : eval_poly_at_series(coeff, vals);
    HsElem<Series> term = one.scaled(cval);
    for (int p = 1; p <= m; ++p)
      for (int q = 0; q < (int)form.coords().size(); ++q) {
        int e = mono.at(p, q);
        if (e > 0) term = term * hs_elem_pow(jets[q].c[p], e, one);
      }
    acc = acc + term;
  }
  return acc;
}

HsElem<RatFunc> hs_compose(const HsElem<RatFunc>& pulled, const RatFunc& rho) {
  const int m = pulled.order();
  if (pulled.coords().size() != 1)
    fail(Errc::Internal, "hs_compose expects a form over one parameter");
  Jet<RatFunc> rj = jet_of_ratfunc(rho, m);
  std::vector<std::string> out_coords{rho.var()};
  HsElem<RatFunc> one = HsElem<RatFunc>::scalar(m, out_coords, RatFunc::constant(1, rho.var()));
  HsElem<RatFunc> acc(m, out_coords);
  for (const auto& [mono, coeff] : pulled.terms()) {
    HsElem<RatFunc> term = one.scaled(coeff.compose(rho));
    for (int p = 1; p <= m; ++p) {
      int e = mono.at(p, 0);
      if (e > 0) term = term * hs_elem_pow(rj.c[p], e, one);
    }
    acc = acc + term;
  }
  return acc;
}

Poly hs_common_denominator(const HsElem<RatFunc>& pulled) {
  Poly acc = Poly::constant(1);
  for (const auto& [mono, coeff] : pulled.terms()) {
    Poly g = gcd(acc, coeff.den());
    acc = exact_div(acc * coeff.den(), g);
  }
  if (!acc.is_constant()) {
    // monic normalization
    std::string var = pulled.terms().begin()->second.var();
    std::vector<Rational> d = acc.dense_univariate(var);
    acc = acc * (Rational(1) / d.back());
  }
  return acc;
}

std::optional<long> vanishing_order(const HsElem<RatFunc>& pulled, const PointP1& q) {
  if (pulled.is_zero()) return std::nullopt;
  if (q.is_infinity()) {
    // Re-expand in the opposite chart of P^1: t = 1/tau.
    RatFunc rho(Poly::constant(1), Poly::variable("#tau"), "#tau");
    return vanishing_order(hs_compose(pulled, rho), PointP1::affine(0));
  }
  long best = 0;
  bool first = true;
  for (const auto& [mono, coeff] : pulled.terms()) {
    long o = coeff.ord_at(q);
    if (first || o < best) best = o;
    first = false;
  }
  return best;
}

}  // namespace omega
