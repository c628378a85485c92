#pragma once

// Tokenizer and expression grammar shared by polynomial text and the ring
// description language.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/')? unary)*     juxtaposition multiplies
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | identifier | '(' expr ')'

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "unital/polynomial.hpp"

namespace unital {

enum class TokenKind { Identifier, Integer, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Identifiers are [A-Za-z_][A-Za-z0-9_]*; symbols are single characters
/// from "+-*/^()[],". Anything else is a ParseError. Names starting with '#'
/// are therefore unreachable from text.
std::vector<Token> tokenize(std::string_view text);

struct ExprNode {
  enum class Kind { Integer, Name, Add, Sub, Neg, Mul, Div, Pow };
  Kind kind = Kind::Integer;
  mpz_class integer;
  std::string name;
  std::uint32_t exponent = 0;
  std::vector<std::unique_ptr<ExprNode>> children;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Cursor over a token vector; parse functions advance `pos`.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_symbol(char c) const;
  bool accept_symbol(char c);
  const Token& expect_symbol(char c);
  const Token& expect(TokenKind kind, const char* what);
  bool at_end() const { return peek().kind == TokenKind::End; }
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::unique_ptr<ExprNode> parse_expression(TokenStream& ts);

/// A quotient num/den of polynomials in one ring, not reduced.
struct PolyFraction {
  Polynomial num;
  Polynomial den;
};

/// Evaluates an expression in `ring`. Names resolve to ring variables or to
/// generators of the ring's function field; unknown names are ParseErrors at
/// the name's position. Division by an expression that is identically zero
/// throws DivisionByZero.
PolyFraction evaluate_fraction(const ExprNode& node, const PolyRing* ring);

/// As evaluate_fraction, but every divisor must be a nonzero constant.
Polynomial evaluate_polynomial(const ExprNode& node, const PolyRing* ring);

Polynomial parse_polynomial(std::string_view text, const PolyRing* ring);
PolyFraction parse_fraction(std::string_view text, const PolyRing* ring);

}  // namespace unital
