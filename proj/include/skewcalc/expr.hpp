#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "skewcalc/error.hpp"
#include "skewcalc/scalar.hpp"

namespace skewcalc {

enum class TokKind { Ident, Number, String, Punct, Arrow, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Tokenizes the presentation grammar. `#` starts a comment; U+2212 lexes as '-'.
std::vector<Token> tokenize(const std::string& text);

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  mpz_class number;
  std::string symbol;
  long exponent = 0;
  ExprPtr lhs, rhs;
  std::size_t line = 1, column = 1;
};

/// Recursive-descent expression parser over a token vector.
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' '-'? int)?
///   atom  := number | identifier | '(' expr ')'
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t& pos) : toks_(toks), pos_(pos) {}
  ExprPtr parse_expr();

 private:
  ExprPtr parse_term();
  ExprPtr parse_unary();
  ExprPtr parse_power();
  ExprPtr parse_atom();
  const Token& peek() const { return toks_[pos_]; }
  bool is_punct(const char* p) const { return peek().kind == TokKind::Punct && peek().text == p; }

  const std::vector<Token>& toks_;
  std::size_t& pos_;
};

/// Parses a complete expression string; trailing tokens are a syntax error.
ExprPtr parse_expression(const std::string& text);

[[noreturn]] void throw_syntax(const Token& at, const std::string& message);

/// Evaluates an expression tree. `Ops` supplies the ring:
///   T number(const mpz_class&), T symbol(const ExprNode&), T add/sub/mul(T, T),
///   T neg(T), T div(T, T, const ExprNode&), T pow(T, long, const ExprNode&).
template <class T, class Ops>
T evaluate(const ExprNode& n, Ops& ops) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Number: return ops.number(n.number);
    case K::Symbol: return ops.symbol(n);
    case K::Neg: return ops.neg(evaluate<T>(*n.lhs, ops));
    case K::Add: return ops.add(evaluate<T>(*n.lhs, ops), evaluate<T>(*n.rhs, ops));
    case K::Sub: return ops.sub(evaluate<T>(*n.lhs, ops), evaluate<T>(*n.rhs, ops));
    case K::Mul: return ops.mul(evaluate<T>(*n.lhs, ops), evaluate<T>(*n.rhs, ops));
    case K::Div: return ops.div(evaluate<T>(*n.lhs, ops), evaluate<T>(*n.rhs, ops), n);
    case K::Pow: return ops.pow(evaluate<T>(*n.lhs, ops), n.exponent, n);
  }
  throw Error(ErrorCode::Internal, "bad expression node");
}

/// Evaluates an expression containing only numbers and q as a scalar of `field`.
Scalar evaluate_scalar(const FieldDescriptor& field, const ExprNode& n);

/// Parses a coefficient expression. FIELD_MISMATCH for symbols outside the field.
Scalar parse_scalar(const FieldDescriptor& field, const std::string& text);

}  // namespace skewcalc
