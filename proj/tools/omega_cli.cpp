// Command-line front end: scenario loading, the verification subcommands, and
// seeded fuzz campaigns with CSV output.
//
// Exit codes: 0 success, 2 a violation was found, 3 scenario/input error.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "omega/scenario.hpp"

using namespace omega;

namespace {

struct Options {
  std::string input;
  std::string out;
  std::string format = "text";
  long seed = -1;
  long trials = -1;
  long max_degree = -1;
  long order = kDefaultSeriesOrder;
};

std::ostream& output(const Options& opt, std::ofstream& file) {
  if (opt.out.empty()) return std::cout;
  file.open(opt.out);
  if (!file) fail(Errc::BadConfig, "cannot open output file " + opt.out);
  return file;
}

const FormOnP2& form_ref(const Scenario& s, const std::string& name) {
  auto it = s.forms.find(name);
  if (it == s.forms.end()) fail(Errc::UnknownReference, "form '" + name + "'");
  return it->second;
}

const QuadFamily& family_ref(const Scenario& s, const std::string& name) {
  auto it = s.families.find(name);
  if (it == s.families.end()) fail(Errc::UnknownReference, "family '" + name + "'");
  return it->second;
}

std::vector<IntegralComponent> components_for(const Scenario& s, const CheckSpec& c) {
  std::vector<IntegralComponent> comps;
  if (!c.family.empty()) {
    const QuadFamily& fam = family_ref(s, c.family);
    long k = c.components > 0 ? c.components : (long)fam.parameters.size();
    if (k > (long)fam.parameters.size()) fail(Errc::BadConfig, "not enough family members");
    for (long i = 0; i < k; ++i)
      comps.push_back({fam.line_at(fam.parameters[i]), fam.line_param(fam.parameters[i])});
    return comps;
  }
  auto it = s.divisors.find(c.divisor);
  if (it == s.divisors.end()) fail(Errc::UnknownReference, "divisor '" + c.divisor + "'");
  for (const auto& g : it->second) {
    if (g.total_degree() != 1)
      fail(Errc::BadConfig, "main/dosvar components must be lines or family members");
    comps.push_back({g, parametrize_line(g)});
  }
  return comps;
}

int run_integrality(const Scenario& s, std::ostream& os) {
  bool any = false;
  for (const auto& c : s.checks) {
    if (c.type != "integrality") continue;
    any = true;
    const FormOnP2& w = form_ref(s, c.form);
    for (const auto& [name, phi] : s.maps) {
      bool integral = is_integral_parametrized(w, phi);
      os << "integrality " << c.form << " " << name << ": " << (integral ? "YES" : "NO") << "\n";
    }
    for (const auto& [fname, fam] : s.families) {
      long yes = 0;
      for (const auto& par : fam.parameters)
        yes += is_integral_parametrized(w, fam.line_param(par));
      os << "integrality " << c.form << " family " << fname << ": " << yes << "/"
         << fam.parameters.size() << " member lines integral\n";
    }
  }
  if (!any) os << "no integrality checks in the scenario\n";
  return 0;
}

int run_discriminant(const Scenario& s, std::ostream& os) {
  for (const auto& [name, w] : s.forms) {
    if (w.order() != 1) continue;
    DiscriminantLocus loc = discriminant_locus(w);
    os << "Delta(" << name << ") = " << loc.global.str() << "\n";
    for (Chart c : {Chart::UX, Chart::UY, Chart::UZ})
      os << "  delta_" << chart_label(c) << " = " << loc.chart_delta[(int)c].str() << "\n";
  }
  return 0;
}

int run_branches(const Scenario& s, const Options& opt, std::ostream& os) {
  for (const auto& q : s.branch_queries) {
    const FormOnP2& w = form_ref(s, q.form);
    long order = opt.order != kDefaultSeriesOrder ? opt.order : q.order;
    BranchReport rep = local_branches(w, q.chart, q.x1, q.x2, order);
    os << "branches " << q.name << " at " << chart_label(q.chart) << " (" << to_string(q.x1)
       << ", " << to_string(q.x2) << ") order " << order << ":\n";
    os << "  total multiplicity " << rep.total_multiplicity << ", rational "
       << rep.rational_factors.size() << ", counted irrational " << rep.irrational_multiplicity
       << "\n";
    for (const auto& f : rep.rational_factors) {
      os << "  " << (f.vertical ? "vertical branch x(t)" : "branch y(t)") << " tangent "
         << to_string(f.tangent) << ": " << f.branch.truncated(std::min<long>(order, 6)).str()
         << " (annihilates to order " << f.annihilation_order << ")\n";
    }
    os << "  tangents distinct: " << (rep.tangents_distinct ? "yes" : "no")
       << ", factor product reproduces the symbol form: "
       << (rep.hensel_product_ok ? "yes" : "no") << "\n";
  }
  if (s.branch_queries.empty()) os << "no branch queries in the scenario\n";
  return 0;
}

int run_counting(const Scenario& s, std::ostream& os) {
  for (const auto& [mname, phi] : s.maps) {
    auto print_rows = [&](const std::string& dname, const std::vector<Poly>& comps) {
      os << "counting " << mname << " vs " << dname << ":\n";
      long height_total = 0;
      for (const auto& g : comps) {
        OrderRow row;
        try {
          row = vanishing_orders(phi, g);
        } catch (const CalcError& e) {
          os << "  " << g.str() << ": " << e.what() << "\n";
          continue;
        }
        height_total += row.total_degree;
        os << "  " << g.str() << ": ";
        for (const auto& [pt, c] : row.rational_points) os << pt.str() << "^" << c << " ";
        for (const auto& [deg, c] : row.irrational_blocks)
          os << "{conjugate block deg " << deg << "}^" << c << " ";
        os << "| N1=" << truncated_count(row, 1) << " N2=" << truncated_count(row, 2)
           << " N3=" << truncated_count(row, 3) << "\n";
      }
      os << "  height h_{O(D)} = " << height_total << "\n";
    };
    for (const auto& [dname, comps] : s.divisors) print_rows(dname, comps);
    for (const auto& [fname, fam] : s.families) print_rows("family " + fname, fam.lines());
  }
  return 0;
}

int run_verify(const Scenario& s, const std::string& type, std::ostream& os) {
  int exit_code = 0;
  bool any = false;
  for (const auto& c : s.checks) {
    if (c.type != type) continue;
    any = true;
    if (type == "main") {
      const FormOnP2& w = form_ref(s, c.form);
      ScenarioReport rep = main_inequality_report(w, components_for(s, c), s.maps.at(c.map));
      os << "main " << c.name << ": LHS " << to_string(rep.lhs)
         << (rep.lhs > rep.rhs ? " > " : " <= ") << "RHS " << to_string(rep.rhs) << ", integral "
         << (rep.integral ? "yes" : "no") << ", verdict " << verdict_name(rep.verdict) << " [SNC "
         << rep.snc << "]\n";
      if (rep.verdict == Verdict::VIOLATION) exit_code = 2;
    } else if (type == "dosvar") {
      const FormOnP2& w = form_ref(s, c.form);
      DosvarReport rep = dosvar_order_check(w, components_for(s, c), s.maps.at(c.map), c.q);
      os << "dosvar " << c.name << ": orders";
      for (long o : rep.orders) os << " " << o;
      os << ", bound " << rep.bound << ", actual "
         << (rep.actual ? std::to_string(*rep.actual) : std::string("inf")) << " -> "
         << (rep.ok ? "OK" : "VIOLATION") << "\n";
      if (!rep.ok) exit_code = 2;
    } else if (type == "nw") {
      auto it = s.divisors.find(c.divisor);
      if (it == s.divisors.end()) fail(Errc::UnknownReference, "divisor '" + c.divisor + "'");
      NWReport rep = noguchi_wang_check(it->second, s.maps.at(c.map));
      os << "noguchi-wang " << c.name << ": (q-3)h = " << to_string(rep.lhs)
         << ", sum N2 = " << to_string(rep.rhs) << " -> " << (rep.ok ? "OK" : "VIOLATION")
         << "\n";
      if (!rep.ok) exit_code = 2;
    } else if (type == "quad") {
      const QuadFamily& fam = family_ref(s, c.family);
      QuadReport rep = quad_family_scenario(fam, c.epsilon, s.maps.at(c.map));
      os << "quad2 " << c.name << " [sigma(O(1),O(4)) = " << to_string(sigma_p2(1, 4)) << "]: ";
      if (rep.in_exceptional) {
        os << "image in Y u D (" << rep.notes << ")";
        if (rep.lhs != 0 || rep.rhs != 0)
          os << "; would-be inequality " << to_string(rep.lhs) << " < " << to_string(rep.rhs)
             << " " << (rep.lhs < rep.rhs ? "holds" : "fails (membership necessary)");
        os << "\n";
      } else {
        os << "LHS " << to_string(rep.lhs) << " < RHS " << to_string(rep.rhs) << " -> "
           << (rep.ok ? "OK" : "VIOLATION") << "\n";
        if (!rep.ok) exit_code = 2;
      }
    } else if (type == "campana") {
      const FormOnP2& w = form_ref(s, c.form);
      const QuadFamily& fam = family_ref(s, c.family);
      std::vector<Rational> eps(fam.parameters.size(), c.epsilon);
      CampanaWitness witness = c.witness;
      if (witness.deg_effective > 0 && witness.effective.is_zero()) {
        // Default support for E: a product of member lines of the right degree.
        Poly e = Poly::constant(1);
        for (long i = 0; i < witness.deg_effective; ++i)
          e = e * fam.line_at(fam.parameters[i % fam.parameters.size()]);
        witness.effective = e;
      }
      CampanaReport rep = campana_check(w, fam, eps, witness, s.maps.at(c.map));
      os << "campana " << c.name << ": campana yes, " << rep.notes << " -> "
         << (rep.ok ? "OK" : "VIOLATION") << "\n";
      if (!rep.ok) exit_code = 2;
      CampanaSearchResult search = campana_conic_search(w, fam, eps, 4242, 60);
      os << "campana search: " << search.candidates << " candidate conics, "
         << search.campana_found << " Campana, " << search.outside_z << " outside Z"
         << (search.envelope_recovered ? " (envelope recovered)" : "") << "\n";
      for (const auto& n : search.notes) os << "  note: " << n << "\n";
      if (search.outside_z > 0) exit_code = 2;
    }
  }
  if (!any) os << "no checks of type '" << type << "' in the scenario\n";
  return exit_code;
}

int run_fuzz(const Scenario& s, const Options& opt, std::ostream& os) {
  int exit_code = 0;
  bool any = false;
  for (const auto& spec : s.campaigns) {
    any = true;
    FuzzConfig cfg;
    cfg.kind = spec.kind;
    cfg.seed = opt.seed >= 0 ? (uint64_t)opt.seed : spec.seed;
    cfg.trials = opt.trials >= 0 ? opt.trials : spec.trials;
    cfg.max_degree = opt.max_degree >= 0 ? opt.max_degree : spec.max_degree;
    FuzzContext ctx;
    if (!spec.form.empty()) ctx.wronskian = &form_ref(s, spec.form);
    if (!spec.quad_form.empty()) ctx.quad = &form_ref(s, spec.quad_form);
    if (!spec.family.empty()) ctx.family = &family_ref(s, spec.family);
    FuzzOutcome out = fuzz_campaign(cfg, ctx);
    if (opt.format == "csv") {
      os << out.csv;
    } else {
      os << "campaign " << spec.name << " (" << campaign_kind_name(cfg.kind) << "): " << out.rows
         << " rows, " << out.violations << " violations (seed " << cfg.seed << ", trials "
         << cfg.trials << ")\n";
    }
    if (out.violations > 0) exit_code = 2;
  }
  if (!any) os << "no campaigns in the scenario\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic checks for height inequalities of plane curves"};
  app.require_subcommand(1);
  Options opt;

  std::vector<std::string> subnames{"integrality",  "discriminant",  "branches",
                                    "counting",     "verify-main",   "verify-nw",
                                    "verify-quad",  "verify-dosvar", "verify-campana",
                                    "fuzz"};
  for (const auto& name : subnames) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opt.input, "scenario file")->required();
    sub->add_option("--out", opt.out, "write output to a file");
    sub->add_option("--format", opt.format, "text|csv")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--seed", opt.seed, "override campaign seed");
    sub->add_option("--trials", opt.trials, "override campaign trials");
    sub->add_option("--max-degree", opt.max_degree, "override campaign max degree");
    sub->add_option("--order", opt.order, "series truncation order");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    Scenario s = load_scenario_file(opt.input);
    std::ofstream file;
    std::ostream& os = output(opt, file);
    std::string cmd = app.get_subcommands().front()->get_name();
    int code = 0;
    if (cmd == "integrality") code = run_integrality(s, os);
    else if (cmd == "discriminant") code = run_discriminant(s, os);
    else if (cmd == "branches") code = run_branches(s, opt, os);
    else if (cmd == "counting") code = run_counting(s, os);
    else if (cmd == "verify-main") code = run_verify(s, "main", os);
    else if (cmd == "verify-nw") code = run_verify(s, "nw", os);
    else if (cmd == "verify-quad") code = run_verify(s, "quad", os);
    else if (cmd == "verify-dosvar") code = run_verify(s, "dosvar", os);
    else if (cmd == "verify-campana") code = run_verify(s, "campana", os);
    else if (cmd == "fuzz") code = run_fuzz(s, opt, os);
    return code;
  } catch (const ParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 3;
  } catch (const CalcError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
