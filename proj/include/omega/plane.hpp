// Rational maps P^1 -> P^2, plane divisors, heights, vanishing orders,
// truncated counting functions, and ramification of P^1 self-maps. Source
// coordinates are (s,t); plane coordinates are (X,Y,Z); the affine parameter
// of P^1 is s/t and is printed as t in pulled-back data.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omega/poly.hpp"
#include "omega/ratfunc.hpp"

namespace omega {

struct RationalMap {
  Poly F0, F1, F2;  // homogeneous in (s,t) of common degree
  long degree = 0;

  const Poly& component(int i) const { return i == 0 ? F0 : (i == 1 ? F1 : F2); }
  std::string str() const { return "[" + F0.str() + " : " + F1.str() + " : " + F2.str() + "]"; }
};

// Common factors are stripped (reported through *warning); ConstantMap and
// UnequalDegrees are rejected.
RationalMap validate_map(const Poly& F0, const Poly& F1, const Poly& F2,
                         std::string* warning = nullptr);

// Dehomogenized components as rational functions of the affine parameter.
RatFunc map_component_ratio(const RationalMap& phi, int num, int den);
// Evaluate the map at a source point (returns homogeneous coordinates).
std::vector<Rational> eval_map(const RationalMap& phi, const PointP1& q);

struct DivisorComponent {
  Poly equation;         // homogeneous, squarefree, irreducible (validated for deg <= 2)
  long multiplicity = 1;
};

enum class SncStatus { VerifiedLines, VerifiedTangency, Assumed };

struct PlaneDivisor {
  std::vector<DivisorComponent> components;
  SncStatus snc = SncStatus::Assumed;
  std::vector<std::string> warnings;

  long degree() const;
  size_t size() const { return components.size(); }
};

// Validates equations (homogeneous, squarefree; irreducibility certified for
// degree <= 2, otherwise a warning is recorded) and, when requested, the
// VerifiedLines SNC certificate (all linear, pairwise independent, no three
// concurrent).
PlaneDivisor make_divisor(const std::vector<Poly>& equations, bool verify_lines);
bool lines_no_three_concurrent(const std::vector<Poly>& lines, std::string* why = nullptr);
// Lines plus one parametrized conic: certifies SNC by checking that every
// line meets the conic transversally and that no line-line intersection lands
// on it. Grants VerifiedTangency.
PlaneDivisor make_divisor_with_conic(const std::vector<Poly>& lines, const Poly& conic,
                                     const RationalMap& conic_param);

// Heights.
long height(const RationalMap& phi, long twist);                       // k * deg(phi)
long height(const RationalMap& phi, const PlaneDivisor& d);            // deg(D) * deg(phi)

// Orders of vanishing of phi against one component.
using OrderRow = BinaryFactorization;
OrderRow vanishing_orders(const RationalMap& phi, const Poly& component);
long order_at(const OrderRow& row, const PointP1& q);
long truncated_count(const OrderRow& row, long n);  // sum min(n,c), conjugate blocks weighted

struct OrderProfile {
  std::vector<OrderRow> rows;  // one per divisor component
};
OrderProfile order_profile(const RationalMap& phi, const PlaneDivisor& d);
long truncated_counting(const RationalMap& phi, const PlaneDivisor& d, long n);

// Ramification index of a self-map of P^1 given as a homogeneous pair.
long ramification_factor(const Poly& R0, const Poly& R1, const PointP1& q);
// phi o rho as maps (rho a pair of binary forms on the source P^1).
RationalMap compose_map(const RationalMap& phi, const Poly& R0, const Poly& R1);

bool image_in_curve(const RationalMap& phi, const Poly& g);
bool image_is_line(const RationalMap& phi);

// Rational parametrizations.
RationalMap parametrize_line(const Poly& line);
// Smooth conic with a known rational point on it (homogeneous coordinates).
RationalMap parametrize_conic(const Poly& conic, const std::vector<Rational>& point);

// 3x3 symmetric matrix of a conic a*X^2+...; used for smoothness tests.
std::vector<std::vector<Rational>> conic_matrix(const Poly& conic);

}  // namespace omega
