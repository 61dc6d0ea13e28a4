#include "omega/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace omega {

bool ScnValue::operator==(const ScnValue& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Str: return str == o.str;
    case Kind::Num: return num == o.num;
    case Kind::List: return list == o.list;
  }
  return false;
}

const ScnValue* ScnBlock::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

namespace {

class ScenarioParser {
 public:
  explicit ScenarioParser(const std::string& text) : toks_(tokenize(text)) {}

  std::vector<ScnBlock> parse() {
    std::vector<ScnBlock> blocks;
    while (peek().kind != Tok::End) blocks.push_back(parse_block());
    return blocks;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError(Errc::SyntaxError, "expected " + what + ", found '" + peek().text + "'",
                       peek().pos);
    ++i_;
  }

  ScnValue parse_value() {
    ScnValue v;
    v.pos = peek().pos;
    if (peek().kind == Tok::String) {
      v.kind = ScnValue::Kind::Str;
      v.str = take().text;
      return v;
    }
    if (peek().kind == Tok::Number || peek().kind == Tok::Minus) {
      bool neg = false;
      if (peek().kind == Tok::Minus) {
        take();
        neg = true;
      }
      if (peek().kind != Tok::Number)
        throw ParseError(Errc::SyntaxError, "expected a number", peek().pos);
      v.kind = ScnValue::Kind::Num;
      v.num = take().num;
      if (neg) v.num = -v.num;
      return v;
    }
    if (peek().kind == Tok::LBracket) {
      take();
      v.kind = ScnValue::Kind::List;
      if (peek().kind != Tok::RBracket) {
        v.list.push_back(parse_value());
        while (peek().kind == Tok::Comma) {
          take();
          v.list.push_back(parse_value());
        }
      }
      expect(Tok::RBracket, "']'");
      return v;
    }
    throw ParseError(Errc::SyntaxError, "expected a value, found '" + peek().text + "'",
                     peek().pos);
  }

  ScnBlock parse_block() {
    ScnBlock b;
    if (peek().kind != Tok::Ident)
      throw ParseError(Errc::SyntaxError, "expected a block kind", peek().pos);
    b.pos = peek().pos;
    b.kind = take().text;
    if (peek().kind != Tok::Ident)
      throw ParseError(Errc::SyntaxError, "expected a block name", peek().pos);
    b.name = take().text;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      if (peek().kind != Tok::Ident)
        throw ParseError(Errc::SyntaxError, "expected an entry key", peek().pos);
      std::string key = take().text;
      expect(Tok::Equals, "'='");
      ScnValue val = parse_value();
      for (const auto& [k, unused] : b.entries)
        if (k == key)
          throw ParseError(Errc::DuplicateName, "duplicate entry '" + key + "'", b.pos);
      b.entries.emplace_back(std::move(key), std::move(val));
    }
    expect(Tok::RBrace, "'}'");
    return b;
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

[[noreturn]] void unknown_ref(const std::string& what, const std::string& name, SourcePos pos) {
  throw ParseError(Errc::UnknownReference, "unknown " + what + " '" + name + "'", pos);
}

// Re-anchor diagnostics from inside a quoted string to file coordinates.
template <class F>
auto in_string(const ScnValue& v, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    SourcePos p = v.pos;
    if (e.pos().line == 1) p.col += e.pos().col;  // content starts after the quote
    else p.line += e.pos().line - 1;
    throw ParseError(e.code(), std::string("in string: ") + e.what(), p);
  }
}

const ScnValue& need(const ScnBlock& b, const std::string& key, ScnValue::Kind kind) {
  const ScnValue* v = b.find(key);
  if (!v)
    throw ParseError(Errc::SyntaxError, "block '" + b.name + "' is missing entry '" + key + "'",
                     b.pos);
  if (v->kind != kind)
    throw ParseError(Errc::SyntaxError, "entry '" + key + "' has the wrong type", v->pos);
  return *v;
}

long need_int(const ScnBlock& b, const std::string& key, long fallback, bool required = false) {
  const ScnValue* v = b.find(key);
  if (!v) {
    if (required)
      throw ParseError(Errc::SyntaxError, "block '" + b.name + "' is missing entry '" + key + "'",
                       b.pos);
    return fallback;
  }
  if (v->kind != ScnValue::Kind::Num || !is_integer(v->num))
    throw ParseError(Errc::SyntaxError, "entry '" + key + "' must be an integer", v->pos);
  return to_long(v->num);
}

PointP1 point_from_value(const ScnValue& v) {
  if (v.kind == ScnValue::Kind::Num) return PointP1::affine(v.num);
  if (v.kind == ScnValue::Kind::Str && v.str == "inf") return PointP1::infinity();
  throw ParseError(Errc::SyntaxError, "expected a rational parameter or \"inf\"", v.pos);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  s.blocks = ScenarioParser(text).parse();
  // Duplicate names within one kind are rejected.
  std::set<std::pair<std::string, std::string>> names;
  for (const auto& b : s.blocks) {
    std::string kind = b.kind;
    if (kind == "check" || kind == "campaign" || kind == "branches") kind = "#task";
    if (!names.emplace(kind, b.name).second)
      throw ParseError(Errc::DuplicateName, "duplicate " + b.kind + " '" + b.name + "'", b.pos);
  }
  // First pass: data blocks.
  for (const auto& b : s.blocks) {
    if (b.kind == "form") {
      int m = (int)need_int(b, "order", 0, true);
      int r = (int)need_int(b, "degree", 0, true);
      long k = need_int(b, "twist", 0, true);
      std::array<const ScnValue*, 3> charts{b.find("chart_UX"), b.find("chart_UY"),
                                            b.find("chart_UZ")};
      int given = 0;
      for (auto* c : charts) given += (c != nullptr);
      if (given == 3) {
        std::array<HsElem<Poly>, 3> exprs;
        for (int i = 0; i < 3; ++i)
          exprs[i] = in_string(*charts[i], [&] {
            return parse_hs(charts[i]->str, m, chart_coords((Chart)i));
          });
        s.forms.emplace(b.name, FormOnP2::from_all_charts(m, r, k, std::move(exprs)));
      } else if (given == 1) {
        int which = charts[0] ? 0 : (charts[1] ? 1 : 2);
        HsElem<Poly> e = in_string(*charts[which], [&] {
          return parse_hs(charts[which]->str, m, chart_coords((Chart)which));
        });
        s.forms.emplace(b.name, FormOnP2::from_single_chart(m, r, k, (Chart)which, e));
      } else {
        throw ParseError(Errc::SyntaxError,
                         "a form needs either one chart expression or all three", b.pos);
      }
    } else if (b.kind == "map") {
      const ScnValue &f0 = need(b, "F0", ScnValue::Kind::Str),
                     &f1 = need(b, "F1", ScnValue::Kind::Str),
                     &f2 = need(b, "F2", ScnValue::Kind::Str);
      Poly p0 = in_string(f0, [&] { return parse_poly(f0.str); });
      Poly p1 = in_string(f1, [&] { return parse_poly(f1.str); });
      Poly p2 = in_string(f2, [&] { return parse_poly(f2.str); });
      s.maps.emplace(b.name, validate_map(p0, p1, p2));
    } else if (b.kind == "family") {
      const ScnValue &av = need(b, "a", ScnValue::Kind::Str),
                     &bv = need(b, "b", ScnValue::Kind::Str),
                     &cv = need(b, "c", ScnValue::Kind::Str);
      Poly pa = in_string(av, [&] { return parse_poly(av.str); });
      Poly pb = in_string(bv, [&] { return parse_poly(bv.str); });
      Poly pc = in_string(cv, [&] { return parse_poly(cv.str); });
      std::vector<PointP1> params;
      for (const auto& lv : need(b, "lambdas", ScnValue::Kind::List).list)
        params.push_back(point_from_value(lv));
      s.families.emplace(b.name, make_quad_family(pa, pb, pc, std::move(params)));
    } else if (b.kind == "divisor") {
      std::vector<Poly> comps;
      for (const auto& lv : need(b, "components", ScnValue::Kind::List).list) {
        if (lv.kind != ScnValue::Kind::Str)
          throw ParseError(Errc::SyntaxError, "divisor components must be strings", lv.pos);
        comps.push_back(in_string(lv, [&] { return parse_poly(lv.str); }));
      }
      if (comps.empty())
        throw ParseError(Errc::SyntaxError, "divisor needs at least one component", b.pos);
      s.divisors.emplace(b.name, std::move(comps));
    } else if (b.kind != "check" && b.kind != "campaign" && b.kind != "branches") {
      throw ParseError(Errc::SyntaxError, "unknown block kind '" + b.kind + "'", b.pos);
    }
  }
  // Second pass: tasks referencing the data blocks.
  auto check_form = [&](const std::string& n, SourcePos pos) {
    if (!s.forms.count(n)) unknown_ref("form", n, pos);
  };
  auto check_map = [&](const std::string& n, SourcePos pos) {
    if (!s.maps.count(n)) unknown_ref("map", n, pos);
  };
  auto check_family = [&](const std::string& n, SourcePos pos) {
    if (!s.families.count(n)) unknown_ref("family", n, pos);
  };
  auto check_divisor = [&](const std::string& n, SourcePos pos) {
    if (!s.divisors.count(n)) unknown_ref("divisor", n, pos);
  };
  for (const auto& b : s.blocks) {
    if (b.kind == "check") {
      CheckSpec c;
      c.name = b.name;
      c.type = need(b, "type", ScnValue::Kind::Str).str;
      auto ref = [&](const char* key) {
        const ScnValue* v = b.find(key);
        return v ? v->str : std::string();
      };
      c.form = ref("form");
      c.map = ref("map");
      c.family = ref("family");
      c.divisor = ref("divisor");
      c.components = need_int(b, "components", 0);
      if (const ScnValue* v = b.find("q")) c.q = point_from_value(*v);
      if (const ScnValue* v = b.find("epsilon")) {
        if (v->kind != ScnValue::Kind::Num)
          throw ParseError(Errc::SyntaxError, "epsilon must be rational", v->pos);
        c.epsilon = v->num;
      }
      c.witness.multiple = need_int(b, "witness_multiple", 1);
      c.witness.deg_ample = need_int(b, "witness_ample", 1);
      c.witness.deg_effective = need_int(b, "witness_effective", 0);
      if (const ScnValue* v = b.find("witness_support")) {
        if (v->kind != ScnValue::Kind::Str)
          throw ParseError(Errc::SyntaxError, "witness_support must be a string", v->pos);
        c.witness.effective = in_string(*v, [&] { return parse_poly(v->str); });
      }
      if (c.type != "main" && c.type != "dosvar" && c.type != "nw" && c.type != "quad" &&
          c.type != "campana" && c.type != "integrality")
        throw ParseError(Errc::SyntaxError, "unknown check type '" + c.type + "'", b.pos);
      if (!c.form.empty()) check_form(c.form, b.pos);
      if (!c.map.empty()) check_map(c.map, b.pos);
      if (!c.family.empty()) check_family(c.family, b.pos);
      if (!c.divisor.empty()) check_divisor(c.divisor, b.pos);
      if ((c.type == "main" || c.type == "dosvar" || c.type == "integrality") && c.form.empty())
        throw ParseError(Errc::SyntaxError, "check '" + c.name + "' needs a form", b.pos);
      if (c.type != "integrality" && c.map.empty())
        throw ParseError(Errc::SyntaxError, "check '" + c.name + "' needs a map", b.pos);
      s.checks.push_back(std::move(c));
    } else if (b.kind == "campaign") {
      CampaignSpec c;
      c.name = b.name;
      c.kind = campaign_kind_from(need(b, "kind", ScnValue::Kind::Str).str);
      c.seed = (uint64_t)need_int(b, "seed", 0);
      c.trials = need_int(b, "trials", 0);
      c.max_degree = need_int(b, "max_degree", 3);
      auto ref = [&](const char* key) {
        const ScnValue* v = b.find(key);
        return v ? v->str : std::string();
      };
      c.form = ref("form");
      c.quad_form = ref("quad_form");
      c.family = ref("family");
      if (!c.form.empty()) check_form(c.form, b.pos);
      if (!c.quad_form.empty()) check_form(c.quad_form, b.pos);
      if (!c.family.empty()) check_family(c.family, b.pos);
      s.campaigns.push_back(std::move(c));
    } else if (b.kind == "branches") {
      BranchQuery q;
      q.name = b.name;
      q.form = need(b, "form", ScnValue::Kind::Str).str;
      check_form(q.form, b.pos);
      std::string chart = need(b, "chart", ScnValue::Kind::Str).str;
      if (chart == "UX") q.chart = Chart::UX;
      else if (chart == "UY") q.chart = Chart::UY;
      else if (chart == "UZ") q.chart = Chart::UZ;
      else throw ParseError(Errc::SyntaxError, "chart must be UX, UY or UZ", b.pos);
      const ScnValue &x1 = need(b, "x1", ScnValue::Kind::Num),
                     &x2 = need(b, "x2", ScnValue::Kind::Num);
      q.x1 = x1.num;
      q.x2 = x2.num;
      q.order = need_int(b, "order", 12);
      s.branch_queries.push_back(std::move(q));
    }
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadConfig, "cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

static void print_value(std::ostream& os, const ScnValue& v) {
  switch (v.kind) {
    case ScnValue::Kind::Str: os << '"' << v.str << '"'; break;
    case ScnValue::Kind::Num: os << to_string(v.num); break;
    case ScnValue::Kind::List: {
      os << "[";
      for (size_t i = 0; i < v.list.size(); ++i) {
        if (i) os << ", ";
        print_value(os, v.list[i]);
      }
      os << "]";
      break;
    }
  }
}

std::string print_scenario(const Scenario& s) {
  std::ostringstream os;
  for (const auto& b : s.blocks) {
    os << b.kind << " " << b.name << " {\n";
    for (const auto& [k, v] : b.entries) {
      os << "  " << k << " = ";
      print_value(os, v);
      os << "\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace omega
