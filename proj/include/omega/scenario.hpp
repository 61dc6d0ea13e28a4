// Scenario files: line-oriented blocks `kind NAME { key = value ... }` whose
// values are strings (polynomial/HS expressions), rationals, or lists. All
// cross-references are resolved at load time with positioned diagnostics.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "omega/expr.hpp"
#include "omega/formp2.hpp"
#include "omega/harness.hpp"

namespace omega {

struct ScnValue {
  enum class Kind { Str, Num, List };
  Kind kind = Kind::Num;
  std::string str;
  Rational num;
  std::vector<ScnValue> list;
  SourcePos pos;

  bool operator==(const ScnValue& o) const;
};

struct ScnBlock {
  std::string kind, name;
  std::vector<std::pair<std::string, ScnValue>> entries;  // file order preserved
  SourcePos pos;

  bool operator==(const ScnBlock& o) const {
    return kind == o.kind && name == o.name && entries == o.entries;
  }
  const ScnValue* find(const std::string& key) const;
};

struct CheckSpec {
  std::string name, type;  // main | dosvar | nw | quad | campana | integrality
  std::string form, map, family, divisor;
  long components = 0;     // for family-based divisors: use the first k members
  PointP1 q;               // dosvar base point
  Rational epsilon;        // quad / campana weight
  CampanaWitness witness;  // campana
};

struct CampaignSpec {
  std::string name;
  CampaignKind kind = CampaignKind::WronskianMain;
  uint64_t seed = 0;
  long trials = 0;
  long max_degree = 3;
  std::string form, quad_form, family;
};

struct BranchQuery {
  std::string name, form;
  Chart chart = Chart::UX;
  Rational x1, x2;
  long order = 12;
};

struct Scenario {
  std::vector<ScnBlock> blocks;
  std::map<std::string, FormOnP2> forms;
  std::map<std::string, RationalMap> maps;
  std::map<std::string, QuadFamily> families;
  std::map<std::string, std::vector<Poly>> divisors;
  std::vector<CheckSpec> checks;
  std::vector<CampaignSpec> campaigns;
  std::vector<BranchQuery> branch_queries;

  bool operator==(const Scenario& o) const { return blocks == o.blocks; }
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string print_scenario(const Scenario& s);

}  // namespace omega
