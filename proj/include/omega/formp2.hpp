// Global twisted Hasse-Schmidt forms on P^2 held as chart expressions on the
// three standard charts, with transport, reducedness, the discriminant locus,
// omega-integrality tests, and local branch analysis at points off the locus.
//
// Chart coordinates: U_X:(u,v)=(Y/X,Z/X), U_Y:(a,b)=(X/Y,Z/Y), U_Z:(p,q)=(X/Z,Y/Z).
#pragma once

#include <array>
#include <optional>

#include "omega/binaryform.hpp"
#include "omega/hs.hpp"
#include "omega/plane.hpp"

namespace omega {

enum class Chart { UX = 0, UY = 1, UZ = 2 };

const std::vector<std::string>& chart_coords(Chart c);
std::string chart_label(Chart c);
Poly chart_dehomogenize(const Poly& g, Chart c);
Poly chart_homogenize(const Poly& g, Chart c);
std::vector<Rational> chart_point_to_homogeneous(Chart c, const Rational& x1, const Rational& x2);
std::optional<Chart> chart_containing(const std::vector<Rational>& homog);
// Substitutions coordinate -> rational function of the parameter for a map;
// ImageOutsideChart when the chart's hyperplane contains the image.
std::map<std::string, RatFunc> chart_substitutions(const RationalMap& phi, Chart c);

struct TransportResult {
  HsElem<Poly> form;
  long clearing_exponent = 0;
};
// Transport a symmetric-form chart expression (m = 1) from chart a to chart b,
// clearing denominators against the twist budget. NotGlobalSection when the
// required clearing power exceeds the twist.
TransportResult chart_transport(const HsElem<Poly>& on_a, Chart a, Chart b, int r, long twist);

class FormOnP2 {
 public:
  enum class Provenance { UserAllCharts, TransportedFromOne };

  static FormOnP2 from_single_chart(int m, int r, long twist, Chart chart, HsElem<Poly> expr);
  static FormOnP2 from_all_charts(int m, int r, long twist, std::array<HsElem<Poly>, 3> exprs);

  int order() const { return m_; }
  int degree() const { return r_; }
  long twist() const { return twist_; }
  Provenance provenance() const { return prov_; }
  const HsElem<Poly>& chart_expr(Chart c) const { return exprs_[(int)c]; }
  bool is_zero() const;

  // K_{omega,chart}: the symbol binary form in (d first, d second); m = 1 only.
  BinaryForm<Poly> symbol_form(Chart c) const;

 private:
  FormOnP2() = default;
  int m_ = 1, r_ = 1;
  long twist_ = 0;
  Provenance prov_ = Provenance::UserAllCharts;
  std::array<HsElem<Poly>, 3> exprs_;
};

bool is_reduced(const FormOnP2& w);  // m = 1; ZeroForm on the zero form

struct DiscriminantLocus {
  Poly global;                      // squarefree homogeneous in (X,Y,Z)
  std::array<Poly, 3> chart_delta;  // delta_{omega,chart} per chart
};
DiscriminantLocus discriminant_locus(const FormOnP2& w);  // NotReduced when delta == 0

bool is_integral_parametrized(const FormOnP2& w, const RationalMap& phi);
// Pullback through the named chart's trivialization (valid where the chart's
// hyperplane misses phi's image point of interest).
HsElem<RatFunc> pullback_on_chart(const FormOnP2& w, const RationalMap& phi, Chart c);

struct ImplicitVerdict {
  bool integral;  // true: zero through `order`; false: first obstruction at `order`
  long order;
};
ImplicitVerdict is_integral_implicit(const FormOnP2& w, const Poly& curve, Chart c,
                                     const Rational& x1, const Rational& x2, long n);

struct BranchFactor {
  bool vertical = false;   // factor dx - nu*dy (tangent dx=0 direction) instead of dy - mu*dx
  Rational tangent;        // mu0, i.e. dy/dx at the point (or dx/dy when vertical)
  Series branch;           // y(t) with t the shifted first coordinate (x(t) when vertical)
  long annihilation_order = 0;
};

struct BranchReport {
  Chart chart = Chart::UX;
  Rational x1, x2;
  long degree = 0;                    // r
  std::vector<BranchFactor> rational_factors;
  long irrational_multiplicity = 0;   // counted-only conjugate factors
  bool tangents_distinct = false;
  bool hensel_product_ok = false;
  long total_multiplicity = 0;        // rational + irrational == r
};
// Local analysis at a point off the discriminant locus (m = 1):
// PointOnDiscriminant when delta vanishes at the point.
BranchReport local_branches(const FormOnP2& w, Chart c, const Rational& x1, const Rational& x2,
                            long n);

}  // namespace omega
