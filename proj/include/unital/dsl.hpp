#pragma once

// Ring description language.
//
//   ring  := field '[' vars ']' tail | field
//          | 'ZZ' ('[' vars ']')? tail | 'Z_(' prime ')' | 'Z/' integer
//          | 'chain(' field ',' integer ')'
//   field := 'Q' | 'F_' prime | field '(' vars ')'
//   tail  := ('/' '(' polylist ')')? ('[' '1/' poly ']')*
//
// A bare field is the zero-variable presentation; 'ZZ[x,y]/(...)' is an
// affine presentation with integer coefficients.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "unital/parse.hpp"
#include "unital/ring.hpp"

namespace unital {

struct FieldExpr {
  std::uint32_t characteristic = 0;  // 0 for Q
  std::vector<std::vector<std::string>> extensions;
};

struct RingExpr {
  enum class Kind { Affine, Integers, LocalIntegers, Cyclic, Chain };
  Kind kind = Kind::Affine;
  FieldExpr field;
  bool integer = false;  // ZZ[...] presentations
  bool bracket = false;  // a variable list was written
  std::vector<std::string> vars;
  std::vector<std::shared_ptr<const ExprNode>> relations;
  std::vector<std::shared_ptr<const ExprNode>> inverted;
  std::uint32_t number = 0;  // prime, modulus or chain length
  std::size_t line = 1;
  std::size_t column = 1;
};

RingExpr parse_ring(std::string_view text);
std::string print_ring(const RingExpr& e);
/// Structural equality, ignoring source positions.
bool same_ring_expr(const RingExpr& a, const RingExpr& b);

/// Canonical text of an expression tree; parsing it back gives the same
/// tree.
std::string print_expr(const ExprNode& e);
bool same_expr(const ExprNode& a, const ExprNode& b);

/// Builds the presentation. Semantic errors (unknown or repeated variable,
/// a name shadowing a field generator, bad prime) are ParseErrors at the
/// offending position; presentation sanity failures are PreconditionErrors.
Ring elaborate(const RingExpr& e);
Ring parse_presentation(std::string_view text);

}  // namespace unital
