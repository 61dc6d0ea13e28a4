#include "omega/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace omega {

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  SourcePos pos;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        pos.line++;
        pos.col = 1;
      } else {
        pos.col++;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = pos;
    if (std::isdigit((unsigned char)ch)) {
      size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
      if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
          std::isdigit((unsigned char)text[j + 1])) {
        ++j;
        while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
      }
      t.kind = Tok::Number;
      t.text = text.substr(i, j - i);
      t.num = parse_rational(t.text);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha((unsigned char)ch) || ch == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (ch == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw ParseError(Errc::SyntaxError, "unterminated string", pos);
      t.kind = Tok::String;
      t.text = text.substr(i + 1, j - i - 1);
      advance(j - i + 1);
      out.push_back(std::move(t));
      continue;
    }
    switch (ch) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case '[': t.kind = Tok::LBracket; break;
      case ']': t.kind = Tok::RBracket; break;
      case ',': t.kind = Tok::Comma; break;
      case '=': t.kind = Tok::Equals; break;
      default:
        throw ParseError(Errc::SyntaxError, std::string("unexpected character '") + ch + "'", pos);
    }
    t.text = std::string(1, ch);
    advance(1);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.pos = pos;
  out.push_back(end);
  return out;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr parse_full() {
    ExprPtr e = parse_sum();
    expect(Tok::End, "end of expression");
    return e;
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

  static ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

  ExprPtr parse_sum() {
    ExprPtr left = parse_product();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      Token op = take();
      ExprPtr right = parse_product();
      Expr e;
      e.kind = op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      e.pos = op.pos;
      e.a = left;
      e.b = right;
      left = node(std::move(e));
    }
    return left;
  }

  ExprPtr parse_product() {
    ExprPtr left = parse_unary();
    while (peek().kind == Tok::Star) {
      Token op = take();
      ExprPtr right = parse_unary();
      Expr e;
      e.kind = Expr::Kind::Mul;
      e.pos = op.pos;
      e.a = left;
      e.b = right;
      left = node(std::move(e));
    }
    return left;
  }

  // Unary minus binds looser than '^': -x^2 is -(x^2).
  ExprPtr parse_unary() {
    if (peek().kind == Tok::Minus) {
      Token op = take();
      ExprPtr inner = parse_unary();
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.pos = op.pos;
      e.a = inner;
      return node(std::move(e));
    }
    if (peek().kind == Tok::Plus) {
      take();
      return parse_unary();
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (peek().kind != Tok::Caret) return base;
    Token c = take();
    if (peek().kind != Tok::Number || !is_integer(peek().num) || peek().num < 0)
      throw ParseError(Errc::SyntaxError, "exponent must be a non-negative integer", peek().pos);
    Token expo = take();
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.pos = c.pos;
    e.k = (int)to_long(expo.num);
    e.a = base;
    return node(std::move(e));
  }

  static bool is_d_token(const std::string& s) {
    if (s.size() < 2 || s[0] != 'd') return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit((unsigned char)c); });
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      Token n = take();
      Expr e;
      e.kind = Expr::Kind::Num;
      e.pos = n.pos;
      e.num = n.num;
      return node(std::move(e));
    }
    if (t.kind == Tok::Ident) {
      Token id = take();
      if (is_d_token(id.text)) {
        expect(Tok::LParen, "'(' after derivation token " + id.text);
        ExprPtr inner = parse_sum();
        expect(Tok::RParen, "')'");
        Expr e;
        e.kind = Expr::Kind::Dk;
        e.pos = id.pos;
        e.k = std::stoi(id.text.substr(1));
        e.a = inner;
        return node(std::move(e));
      }
      Expr e;
      e.kind = Expr::Kind::Var;
      e.pos = id.pos;
      e.name = id.text;
      return node(std::move(e));
    }
    if (t.kind == Tok::LParen) {
      take();
      ExprPtr inner = parse_sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(Errc::SyntaxError, "expected a value, found '" + t.text + "'", t.pos);
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

void collect_idents(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Var) out.insert(e->name);
  collect_idents(e->a, out);
  collect_idents(e->b, out);
}

bool contains_d_token(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == Expr::Kind::Dk) return true;
  return contains_d_token(e->a) || contains_d_token(e->b);
}

}  // namespace

ExprPtr parse_expression(const std::string& text) {
  return ExprParser(tokenize(text)).parse_full();
}

Poly eval_poly(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Num: return Poly::constant(e->num);
    case Expr::Kind::Var: return Poly::variable(e->name);
    case Expr::Kind::Add: return eval_poly(e->a) + eval_poly(e->b);
    case Expr::Kind::Sub: return eval_poly(e->a) - eval_poly(e->b);
    case Expr::Kind::Mul: return eval_poly(e->a) * eval_poly(e->b);
    case Expr::Kind::Neg: return -eval_poly(e->a);
    case Expr::Kind::Pow: return eval_poly(e->a).pow(e->k);
    case Expr::Kind::Dk:
      throw ParseError(Errc::SyntaxError, "derivation token not allowed in a polynomial", e->pos);
  }
  fail(Errc::Internal, "unreachable");
}

Poly parse_poly(const std::string& text) { return eval_poly(parse_expression(text)); }

HsElem<Poly> eval_hs(const ExprPtr& e, int m, const std::vector<std::string>& coords) {
  auto scalar = [&](const Poly& p) { return HsElem<Poly>::scalar(m, coords, p); };
  switch (e->kind) {
    case Expr::Kind::Num: return scalar(Poly::constant(e->num));
    case Expr::Kind::Var: {
      if (std::find(coords.begin(), coords.end(), e->name) == coords.end())
        throw ParseError(Errc::SyntaxError, "unknown chart coordinate '" + e->name + "'", e->pos);
      return scalar(Poly::variable(e->name));
    }
    case Expr::Kind::Add: return eval_hs(e->a, m, coords) + eval_hs(e->b, m, coords);
    case Expr::Kind::Sub: return eval_hs(e->a, m, coords) - eval_hs(e->b, m, coords);
    case Expr::Kind::Mul: return eval_hs(e->a, m, coords) * eval_hs(e->b, m, coords);
    case Expr::Kind::Neg: return -eval_hs(e->a, m, coords);
    case Expr::Kind::Pow: {
      HsElem<Poly> base = eval_hs(e->a, m, coords);
      HsElem<Poly> one = HsElem<Poly>::scalar(m, coords, Poly::constant(1));
      HsElem<Poly> r = one;
      for (int i = 0; i < e->k; ++i) r = r * base;
      return r;
    }
    case Expr::Kind::Dk: {
      if (e->k > m || e->k < 1)
        throw CalcError(Errc::OrderOutOfRange,
                        "d" + std::to_string(e->k) + " exceeds the algebra order m=" +
                            std::to_string(m));
      if (contains_d_token(e->a))
        throw ParseError(Errc::SyntaxError, "nested derivation tokens are not defined", e->pos);
      Poly inner = eval_poly(e->a);
      return hs_derive_symbolic_on(inner, e->k, m, coords);
    }
  }
  fail(Errc::Internal, "unreachable");
}

HsElem<Poly> parse_hs(const std::string& text, int m, const std::vector<std::string>& coords) {
  return eval_hs(parse_expression(text), m, coords);
}

HsElem<Poly> hs_reduce(const std::string& text, int m) {
  ExprPtr e = parse_expression(text);
  std::set<std::string> ids;
  collect_idents(e, ids);
  std::vector<std::string> coords(ids.begin(), ids.end());
  if (coords.empty()) coords.push_back("t");
  HsElem<Poly> r = eval_hs(e, m, coords);
  require_weighted_homogeneous(r);
  return r;
}

std::vector<std::string> expr_identifiers(const ExprPtr& e) {
  std::set<std::string> ids;
  collect_idents(e, ids);
  return {ids.begin(), ids.end()};
}

}  // namespace omega
