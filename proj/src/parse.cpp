#include "unital/parse.hpp"

#include <cctype>

#include "unital/error.hpp"

namespace unital {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    std::size_t j = i;
    if (std::isalpha(c) || c == '_') {
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      tok.kind = TokenKind::Identifier;
    } else if (std::isdigit(c)) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = TokenKind::Integer;
    } else if (std::string_view("+-*/^()[],").find(static_cast<char>(c)) !=
               std::string_view::npos) {
      j = i + 1;
      tok.kind = TokenKind::Symbol;
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'",
                       line, column);
    }
    tok.text = std::string(text.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[k];
}

const Token& TokenStream::next() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::at_symbol(char c) const {
  const Token& t = peek();
  return t.kind == TokenKind::Symbol && t.text[0] == c;
}

bool TokenStream::accept_symbol(char c) {
  if (!at_symbol(c)) return false;
  next();
  return true;
}

const Token& TokenStream::expect_symbol(char c) {
  if (!at_symbol(c)) fail(std::string("expected '") + c + "'");
  return next();
}

const Token& TokenStream::expect(TokenKind kind, const char* what) {
  if (peek().kind != kind) fail(std::string("expected ") + what);
  return next();
}

void TokenStream::fail(const std::string& message) const {
  const Token& t = peek();
  std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(message + ", found " + found, t.line, t.column);
}

namespace {

using Node = std::unique_ptr<ExprNode>;

Node make(ExprNode::Kind kind, const Token& at) {
  auto n = std::make_unique<ExprNode>();
  n->kind = kind;
  n->line = at.line;
  n->column = at.column;
  return n;
}

Node binary(ExprNode::Kind kind, const Token& at, Node lhs, Node rhs) {
  Node n = make(kind, at);
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return n;
}

Node parse_unary(TokenStream& ts);

Node parse_atom(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == TokenKind::Integer) {
    Node n = make(ExprNode::Kind::Integer, t);
    n->integer = mpz_class(t.text);
    ts.next();
    return n;
  }
  if (t.kind == TokenKind::Identifier) {
    Node n = make(ExprNode::Kind::Name, t);
    n->name = t.text;
    ts.next();
    return n;
  }
  if (ts.accept_symbol('(')) {
    Node inner = parse_expression(ts);
    ts.expect_symbol(')');
    return inner;
  }
  ts.fail("expected an expression");
}

Node parse_power(TokenStream& ts) {
  Node base = parse_atom(ts);
  if (ts.at_symbol('^')) {
    Token caret = ts.next();
    const Token& e = ts.expect(TokenKind::Integer, "an exponent");
    mpz_class v(e.text);
    if (v > 1000000) throw ParseError("exponent too large", e.line, e.column);
    Node n = make(ExprNode::Kind::Pow, caret);
    n->exponent = static_cast<std::uint32_t>(v.get_ui());
    n->children.push_back(std::move(base));
    return n;
  }
  return base;
}

Node parse_unary(TokenStream& ts) {
  if (ts.at_symbol('-')) {
    Token minus = ts.next();
    Node n = make(ExprNode::Kind::Neg, minus);
    n->children.push_back(parse_unary(ts));
    return n;
  }
  if (ts.accept_symbol('+')) return parse_unary(ts);
  return parse_power(ts);
}

bool starts_factor(const TokenStream& ts) {
  const Token& t = ts.peek();
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::Integer ||
         (t.kind == TokenKind::Symbol && t.text[0] == '(');
}

Node parse_term(TokenStream& ts) {
  Node lhs = parse_unary(ts);
  while (true) {
    if (ts.at_symbol('*')) {
      Token op = ts.next();
      lhs = binary(ExprNode::Kind::Mul, op, std::move(lhs), parse_unary(ts));
    } else if (ts.at_symbol('/')) {
      Token op = ts.next();
      lhs = binary(ExprNode::Kind::Div, op, std::move(lhs), parse_unary(ts));
    } else if (starts_factor(ts)) {
      Token at = ts.peek();
      lhs = binary(ExprNode::Kind::Mul, at, std::move(lhs), parse_power(ts));
    } else {
      return lhs;
    }
  }
}

Polynomial resolve_name(const ExprNode& node, const PolyRing* ring) {
  int i = ring->index_of(node.name);
  if (i >= 0) return Polynomial::variable(ring, static_cast<std::size_t>(i));
  int g = ring->field()->variable_index(node.name);
  if (g >= 0) {
    return Polynomial::constant(
        ring, Scalar::generator(ring->field(), static_cast<std::size_t>(g)));
  }
  throw ParseError("unknown variable '" + node.name + "'", node.line, node.column);
}

}  // namespace

std::unique_ptr<ExprNode> parse_expression(TokenStream& ts) {
  Node lhs = parse_term(ts);
  while (ts.at_symbol('+') || ts.at_symbol('-')) {
    Token op = ts.next();
    auto kind = op.text[0] == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
    lhs = binary(kind, op, std::move(lhs), parse_term(ts));
  }
  return lhs;
}

PolyFraction evaluate_fraction(const ExprNode& node, const PolyRing* ring) {
  auto one = [&] { return Polynomial::constant(ring, 1); };
  switch (node.kind) {
    case ExprNode::Kind::Integer:
      return {Polynomial::constant(ring, Scalar::from_integer(ring->field(), node.integer)),
              one()};
    case ExprNode::Kind::Name:
      return {resolve_name(node, ring), one()};
    case ExprNode::Kind::Neg: {
      PolyFraction a = evaluate_fraction(*node.children[0], ring);
      return {-a.num, a.den};
    }
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: {
      PolyFraction a = evaluate_fraction(*node.children[0], ring);
      PolyFraction b = evaluate_fraction(*node.children[1], ring);
      if (node.kind == ExprNode::Kind::Sub) b.num = -b.num;
      if (a.den == b.den) return {a.num + b.num, a.den};
      return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    case ExprNode::Kind::Mul: {
      PolyFraction a = evaluate_fraction(*node.children[0], ring);
      PolyFraction b = evaluate_fraction(*node.children[1], ring);
      return {a.num * b.num, a.den * b.den};
    }
    case ExprNode::Kind::Div: {
      PolyFraction a = evaluate_fraction(*node.children[0], ring);
      PolyFraction b = evaluate_fraction(*node.children[1], ring);
      if (b.num.is_zero()) {
        throw DivisionByZero("division by zero at line " + std::to_string(node.line) +
                             ", column " + std::to_string(node.column));
      }
      return {a.num * b.den, a.den * b.num};
    }
    case ExprNode::Kind::Pow: {
      PolyFraction a = evaluate_fraction(*node.children[0], ring);
      return {a.num.pow(node.exponent), a.den.pow(node.exponent)};
    }
  }
  return {Polynomial(ring), one()};
}

Polynomial evaluate_polynomial(const ExprNode& node, const PolyRing* ring) {
  PolyFraction f = evaluate_fraction(node, ring);
  if (!f.den.is_constant()) {
    throw ParseError("division by a non-constant in a polynomial", node.line,
                     node.column);
  }
  return f.num.scale(f.den.constant_value().inverse());
}

Polynomial parse_polynomial(std::string_view text, const PolyRing* ring) {
  TokenStream ts(tokenize(text));
  Node n = parse_expression(ts);
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return evaluate_polynomial(*n, ring);
}

PolyFraction parse_fraction(std::string_view text, const PolyRing* ring) {
  TokenStream ts(tokenize(text));
  Node n = parse_expression(ts);
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return evaluate_fraction(*n, ring);
}

}  // namespace unital
