#include "skewcalc/expr.hpp"

#include <cctype>
#include <climits>

namespace skewcalc {

void throw_syntax(const Token& at, const std::string& message) {
  const std::string seen = at.kind == TokKind::End ? "end of input" : "'" + at.text + "'";
  throw SyntaxError(message + " (found " + seen + ")", at.line, at.column);
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
      t.kind = TokKind::Punct;
      t.text = "-";
      advance(3);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = TokKind::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = TokKind::Number;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') throw SyntaxError("unterminated string", line, col);
      t.kind = TokKind::String;
      t.text = text.substr(i + 1, j - i - 1);
      advance(j + 1 - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = TokKind::Arrow;
      t.text = "->";
      advance(2);
    } else if (std::string("+-*/^(){};,=").find(c) != std::string::npos) {
      t.kind = TokKind::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = TokKind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

namespace {

ExprPtr make(ExprNode::Kind k, const Token& at, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->line = at.line;
  n->column = at.column;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

ExprPtr ExprParser::parse_expr() {
  ExprPtr lhs = parse_term();
  while (is_punct("+") || is_punct("-")) {
    const Token op = peek();
    ++pos_;
    ExprPtr rhs = parse_term();
    lhs = make(op.text == "+" ? ExprNode::Kind::Add : ExprNode::Kind::Sub, op, lhs, rhs);
  }
  return lhs;
}

ExprPtr ExprParser::parse_term() {
  ExprPtr lhs = parse_unary();
  while (is_punct("*") || is_punct("/")) {
    const Token op = peek();
    ++pos_;
    ExprPtr rhs = parse_unary();
    lhs = make(op.text == "*" ? ExprNode::Kind::Mul : ExprNode::Kind::Div, op, lhs, rhs);
  }
  return lhs;
}

ExprPtr ExprParser::parse_unary() {
  if (is_punct("-")) {
    const Token op = peek();
    ++pos_;
    return make(ExprNode::Kind::Neg, op, parse_unary());
  }
  return parse_power();
}

ExprPtr ExprParser::parse_power() {
  ExprPtr base = parse_atom();
  if (!is_punct("^")) return base;
  const Token op = peek();
  ++pos_;
  bool negative = false;
  if (is_punct("-")) {
    negative = true;
    ++pos_;
  }
  if (peek().kind != TokKind::Number) throw_syntax(peek(), "expected integer exponent");
  const std::string digits = peek().text;
  if (digits.size() > 9) throw_syntax(peek(), "exponent too large");
  ++pos_;
  auto n = std::make_shared<ExprNode>(*make(ExprNode::Kind::Pow, op, base));
  n->exponent = std::stol(digits) * (negative ? -1 : 1);
  return n;
}

ExprPtr ExprParser::parse_atom() {
  const Token t = peek();
  if (t.kind == TokKind::Number) {
    ++pos_;
    auto n = std::make_shared<ExprNode>(*make(ExprNode::Kind::Number, t));
    n->number = mpz_class(t.text);
    return n;
  }
  if (t.kind == TokKind::Ident) {
    ++pos_;
    auto n = std::make_shared<ExprNode>(*make(ExprNode::Kind::Symbol, t));
    n->symbol = t.text;
    return n;
  }
  if (is_punct("(")) {
    ++pos_;
    ExprPtr inner = parse_expr();
    if (!is_punct(")")) throw_syntax(peek(), "expected ')'");
    ++pos_;
    return inner;
  }
  throw_syntax(t, "expected an expression");
}

ExprPtr parse_expression(const std::string& text) {
  const std::vector<Token> toks = tokenize(text);
  std::size_t pos = 0;
  ExprParser parser(toks, pos);
  ExprPtr e = parser.parse_expr();
  if (toks[pos].kind != TokKind::End) throw_syntax(toks[pos], "unexpected trailing input");
  return e;
}

namespace {

struct ScalarOps {
  FieldDescriptor field;
  Scalar number(const mpz_class& n) { return Scalar::from_integer(field, n); }
  Scalar symbol(const ExprNode& n) {
    if (n.symbol == "q") return Scalar::q(field);
    throw Error(ErrorCode::FieldMismatch, "symbol '" + n.symbol + "' is not a scalar of " + field.to_string() +
                                              " (line " + std::to_string(n.line) + ", column " +
                                              std::to_string(n.column) + ")");
  }
  Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
  Scalar neg(const Scalar& a) { return -a; }
  Scalar div(const Scalar& a, const Scalar& b, const ExprNode&) { return a / b; }
  Scalar pow(const Scalar& a, long e, const ExprNode&) { return a.pow(e); }
};

}  // namespace

Scalar evaluate_scalar(const FieldDescriptor& field, const ExprNode& n) {
  ScalarOps ops{field};
  return evaluate<Scalar>(n, ops);
}

Scalar parse_scalar(const FieldDescriptor& field, const std::string& text) {
  return evaluate_scalar(field, *parse_expression(text));
}

}  // namespace skewcalc
