// Assembles heights, counting functions and integrality verdicts into the
// height-inequality checks and the seeded fuzz campaigns, with CSV reporting.
#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "omega/formp2.hpp"
#include "omega/linalg.hpp"
#include "omega/plane.hpp"

namespace omega {

// Deterministic RNG. Uniform sampling is hand-rolled so identical seeds give
// bit-identical campaigns on every toolchain.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  static Rng for_trial(uint64_t seed, uint64_t trial);
  long uniform(long lo, long hi);  // inclusive bounds
  Rational nonzero_small(long bound);
  Rational small_rational(long num_bound, long den_bound);

 private:
  std::mt19937_64 eng_;
};

enum class Verdict { VACUOUS, FORCED_AND_CONFIRMED, CONTRAPOSITIVE_OK, VIOLATION };
const char* verdict_name(Verdict v);

struct ScenarioReport {
  std::string scenario;
  Rational lhs, rhs;
  std::vector<long> per_component;  // truncated counting values per component
  bool integral = false;
  Verdict verdict = Verdict::VACUOUS;
  std::string snc;
  std::string notes;
};

// A divisor component together with a parametrization of it, which is how the
// harness certifies omega-integrality of the component.
struct IntegralComponent {
  Poly equation;
  RationalMap param;
};

ScenarioReport main_inequality_report(const FormOnP2& w,
                                      const std::vector<IntegralComponent>& comps,
                                      const RationalMap& phi);

struct DosvarReport {
  std::vector<long> orders;    // c_i at Q
  long bound = 0;              // sum c_i - k*m
  std::optional<long> actual;  // nullopt: the pullback vanishes identically
  bool ok = false;
  std::string notes;
};
DosvarReport dosvar_order_check(const FormOnP2& w, const std::vector<IntegralComponent>& comps,
                                const RationalMap& phi, const PointP1& q);

struct NWReport {
  long q = 0;
  Rational lhs;
  Rational rhs;
  std::vector<long> per_line;
  bool ok = false;
};
NWReport noguchi_wang_check(const std::vector<Poly>& lines, const RationalMap& phi);

// Quadratic family of lines s^2 a + s t b + t^2 c, (a,b,c) independent linear
// forms; members selected by parameters on P^1.
struct QuadFamily {
  Poly a, b, c;
  std::vector<PointP1> parameters;
  Mat coeff;                 // rows: coefficients of a, b, c in (X,Y,Z)
  Poly envelope;             // the envelope conic
  RationalMap envelope_param;

  Poly line_at(const PointP1& p) const;
  RationalMap line_param(const PointP1& p) const;
  // Point where the member line touches the envelope.
  std::vector<Rational> tangency_point(const PointP1& p) const;
  std::vector<Poly> lines() const;
};
QuadFamily make_quad_family(const Poly& a, const Poly& b, const Poly& c,
                            std::vector<PointP1> parameters);

struct ExceptionalSet {
  Poly envelope;
  std::vector<Poly> components;  // envelope followed by the member lines
};
ExceptionalSet exceptional_set_quadfamily(const QuadFamily& fam);

// sigma(O(d_ample), O(d_l)) on P^2.
Rational sigma_p2(long deg_ample, long deg_l);

struct QuadReport {
  bool in_exceptional = false;
  Rational lhs, rhs;
  bool ok = false;
  std::string notes;
};
QuadReport quad_family_scenario(const QuadFamily& fam, const Rational& eps,
                                const RationalMap& phi);

bool is_campana(const RationalMap& phi, const PlaneDivisor& d, const std::vector<Rational>& eps);

struct CampanaWitness {
  long multiple = 1;      // M
  long deg_ample = 1;     // deg A > 0
  long deg_effective = 0; // deg E >= 0; negative marks a non-effective witness
  Poly effective;         // supp(E); may be zero when deg_effective == 0
};

struct CampanaReport {
  bool campana = false;
  bool in_z = false;
  bool ok = false;
  std::string notes;
};
CampanaReport campana_check(const FormOnP2& w, const QuadFamily& fam,
                            const std::vector<Rational>& eps, const CampanaWitness& witness,
                            const RationalMap& phi);

struct CampanaSearchResult {
  long candidates = 0;
  long campana_found = 0;
  long outside_z = 0;  // curves that slip past the exceptional set; must be 0
  bool envelope_recovered = false;
  std::vector<std::string> notes;
};
CampanaSearchResult campana_conic_search(const FormOnP2& w, const QuadFamily& fam,
                                         const std::vector<Rational>& eps, uint64_t seed,
                                         long random_line_trials);

// --- fuzz campaigns ----------------------------------------------------------

enum class CampaignKind { WronskianMain, QuadMain, NoguchiWang, Dosvar, QuadTwo };
CampaignKind campaign_kind_from(const std::string& name);  // BadConfig on unknown
const char* campaign_kind_name(CampaignKind k);

struct FuzzConfig {
  CampaignKind kind = CampaignKind::WronskianMain;
  uint64_t seed = 0;
  long trials = 0;
  long max_degree = 3;
};

struct FuzzContext {
  const FormOnP2* wronskian = nullptr;
  const FormOnP2* quad = nullptr;
  const QuadFamily* family = nullptr;
};

struct FuzzOutcome {
  std::string csv;
  long rows = 0;
  long violations = 0;
};
FuzzOutcome fuzz_campaign(const FuzzConfig& cfg, const FuzzContext& ctx);

// Random generators shared by campaigns and the test suites.
RationalMap random_map(Rng& rng, long degree);
RationalMap random_nonline_map(Rng& rng, long degree);
std::vector<Poly> random_line_arrangement(Rng& rng, long q);

}  // namespace omega
