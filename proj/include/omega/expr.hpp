// The shared expression grammar: signed rational literals p/q, identifiers,
// + - * ^, parentheses, and d<k>(...) derivation tokens. One lexer serves the
// polynomial strings and the scenario block format; every diagnostic carries
// a line/column.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "omega/hs.hpp"
#include "omega/poly.hpp"

namespace omega {

struct SourcePos {
  int line = 1, col = 1;
};

class ParseError : public CalcError {
 public:
  ParseError(Errc code, const std::string& what, SourcePos pos)
      : CalcError(code, what + " at line " + std::to_string(pos.line) + ", column " +
                            std::to_string(pos.col)),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

enum class Tok {
  Number,
  Ident,
  String,
  Plus,
  Minus,
  Star,
  Caret,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Equals,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Rational num;
  SourcePos pos;
};

// Tokenizes the whole input; '#' starts a comment to end of line.
std::vector<Token> tokenize(const std::string& text);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Num, Var, Add, Sub, Mul, Neg, Pow, Dk };
  Kind kind;
  SourcePos pos;
  Rational num;       // Num
  std::string name;   // Var
  int k = 0;          // Dk order / Pow exponent
  ExprPtr a, b;
};

ExprPtr parse_expression(const std::string& text);

// Evaluation; rejects d-tokens.
Poly eval_poly(const ExprPtr& e);
Poly parse_poly(const std::string& text);

// HS evaluation: identifiers must be chart coordinates, d-tokens allowed with
// k <= m; d-tokens may not nest.
HsElem<Poly> eval_hs(const ExprPtr& e, int m, const std::vector<std::string>& coords);
HsElem<Poly> parse_hs(const std::string& text, int m, const std::vector<std::string>& coords);

// hs_reduce: evaluate and insist on one weighted degree (InhomogeneousDegree
// otherwise); coordinates inferred from the expression when not supplied.
HsElem<Poly> hs_reduce(const std::string& text, int m);

std::vector<std::string> expr_identifiers(const ExprPtr& e);

}  // namespace omega
