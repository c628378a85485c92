#include "unital/dsl.hpp"

#include <set>

#include "unital/chain.hpp"
#include "unital/error.hpp"

namespace unital {

namespace {

std::uint32_t parse_u32(const Token& t, const char* what) {
  mpz_class v(t.text);
  if (v > 0xFFFFFFFFUL) throw ParseError(std::string(what) + " too large", t.line, t.column);
  return static_cast<std::uint32_t>(v.get_ui());
}

std::uint32_t prime_suffix(const Token& t) {
  // "F_5" arrives as one identifier.
  std::string digits = t.text.substr(2);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a prime after F_", t.line, t.column);
  }
  Token number = t;
  number.text = digits;
  return parse_u32(number, "prime");
}

std::vector<std::string> parse_vars(TokenStream& ts) {
  std::vector<std::string> vars;
  if (ts.at_symbol(']') || ts.at_symbol(')')) return vars;
  do {
    vars.push_back(ts.expect(TokenKind::Identifier, "a variable name").text);
  } while (ts.accept_symbol(','));
  return vars;
}

FieldExpr parse_field(TokenStream& ts) {
  FieldExpr f;
  const Token& t = ts.expect(TokenKind::Identifier, "a field (Q or F_p)");
  if (t.text == "Q") {
    f.characteristic = 0;
  } else if (t.text.rfind("F_", 0) == 0) {
    f.characteristic = prime_suffix(t);
  } else {
    throw ParseError("expected a field (Q or F_p), found '" + t.text + "'", t.line, t.column);
  }
  while (ts.at_symbol('(')) {
    ts.next();
    f.extensions.push_back(parse_vars(ts));
    ts.expect_symbol(')');
  }
  return f;
}

// tail := ('/' '(' polylist ')')? ('[' '1/' poly ']')*
void parse_tail(TokenStream& ts, RingExpr& e) {
  if (ts.accept_symbol('/')) {
    ts.expect_symbol('(');
    do {
      e.relations.push_back(parse_expression(ts));
    } while (ts.accept_symbol(','));
    ts.expect_symbol(')');
  }
  while (ts.at_symbol('[')) {
    ts.next();
    const Token& one = ts.expect(TokenKind::Integer, "'1/'");
    if (one.text != "1") throw ParseError("expected '1/'", one.line, one.column);
    ts.expect_symbol('/');
    e.inverted.push_back(parse_expression(ts));
    ts.expect_symbol(']');
  }
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s;
}

std::string print_field(const FieldExpr& f) {
  std::string s = f.characteristic ? "F_" + std::to_string(f.characteristic) : "Q";
  for (const auto& ext : f.extensions) s += "(" + join(ext) + ")";
  return s;
}

int precedence(const ExprNode& e) {
  switch (e.kind) {
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: return 1;
    case ExprNode::Kind::Mul:
    case ExprNode::Kind::Div: return 2;
    case ExprNode::Kind::Neg: return 3;
    case ExprNode::Kind::Pow: return 4;
    default: return 5;
  }
}

const FieldDesc* build_field(const FieldExpr& f, const RingExpr& at) {
  const FieldDesc* field = nullptr;
  if (f.characteristic == 0) {
    field = rational_field();
  } else {
    if (!is_prime_u32(f.characteristic)) {
      throw ParseError("F_" + std::to_string(f.characteristic) + ": not a prime below 2^31",
                       at.line, at.column);
    }
    field = prime_field(f.characteristic);
  }
  for (const auto& ext : f.extensions) {
    try {
      field = extend_by_fractions(field, ext);
    } catch (const PreconditionError& err) {
      throw ParseError(err.what(), at.line, at.column);
    }
  }
  return field;
}

}  // namespace

RingExpr parse_ring(std::string_view text) {
  TokenStream ts(tokenize(text));
  RingExpr e;
  const Token& head = ts.peek();
  e.line = head.line;
  e.column = head.column;
  if (head.kind != TokenKind::Identifier) ts.fail("expected a ring");
  if (head.text == "ZZ") {
    ts.next();
    e.kind = RingExpr::Kind::Integers;
    e.integer = true;
    if (ts.at_symbol('[') && ts.peek(1).kind != TokenKind::Integer) {
      ts.next();
      e.bracket = true;
      e.vars = parse_vars(ts);
      ts.expect_symbol(']');
    }
    parse_tail(ts, e);
    if (e.bracket || !e.relations.empty() || !e.inverted.empty()) e.kind = RingExpr::Kind::Affine;
  } else if (head.text == "Z_") {
    ts.next();
    e.kind = RingExpr::Kind::LocalIntegers;
    ts.expect_symbol('(');
    e.number = parse_u32(ts.expect(TokenKind::Integer, "a prime"), "prime");
    ts.expect_symbol(')');
  } else if (head.text == "Z") {
    ts.next();
    e.kind = RingExpr::Kind::Cyclic;
    ts.expect_symbol('/');
    e.number = parse_u32(ts.expect(TokenKind::Integer, "a modulus"), "modulus");
  } else if (head.text == "chain") {
    ts.next();
    e.kind = RingExpr::Kind::Chain;
    ts.expect_symbol('(');
    e.field = parse_field(ts);
    ts.expect_symbol(',');
    e.number = parse_u32(ts.expect(TokenKind::Integer, "a chain length"), "chain length");
    ts.expect_symbol(')');
  } else {
    e.kind = RingExpr::Kind::Affine;
    e.field = parse_field(ts);
    if (ts.at_symbol('[')) {
      ts.next();
      e.bracket = true;
      e.vars = parse_vars(ts);
      ts.expect_symbol(']');
      parse_tail(ts, e);
    }
  }
  if (!ts.at_end()) ts.fail("unexpected input after ring");
  return e;
}

std::string print_expr(const ExprNode& e) {
  auto child = [&](std::size_t i, bool right) {
    const ExprNode& c = *e.children[i];
    std::string s = print_expr(c);
    int pe = precedence(e), pc = precedence(c);
    bool wrap = pc < pe || (right && pc == pe && pe <= 2);
    return wrap ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case ExprNode::Kind::Integer: return e.integer.get_str();
    case ExprNode::Kind::Name: return e.name;
    case ExprNode::Kind::Add: return child(0, false) + "+" + child(1, true);
    case ExprNode::Kind::Sub: return child(0, false) + "-" + child(1, true);
    case ExprNode::Kind::Mul: return child(0, false) + "*" + child(1, true);
    case ExprNode::Kind::Div: return child(0, false) + "/" + child(1, true);
    case ExprNode::Kind::Neg: return "-" + child(0, false);
    case ExprNode::Kind::Pow: {
      const ExprNode& b = *e.children[0];
      std::string s = print_expr(b);
      if (precedence(b) < 5) s = "(" + s + ")";
      return s + "^" + std::to_string(e.exponent);
    }
  }
  return "";
}

bool same_expr(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.integer != b.integer || a.name != b.name ||
      a.exponent != b.exponent || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_expr(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

std::string print_ring(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::LocalIntegers: return "Z_(" + std::to_string(e.number) + ")";
    case RingExpr::Kind::Cyclic: return "Z/" + std::to_string(e.number);
    case RingExpr::Kind::Chain:
      return "chain(" + print_field(e.field) + "," + std::to_string(e.number) + ")";
    default: break;
  }
  std::string s = e.integer ? "ZZ" : print_field(e.field);
  if (e.bracket) s += "[" + join(e.vars) + "]";
  if (!e.relations.empty()) {
    s += "/(";
    for (std::size_t i = 0; i < e.relations.size(); ++i) {
      s += (i ? "," : "") + print_expr(*e.relations[i]);
    }
    s += ")";
  }
  for (const auto& d : e.inverted) {
    std::string t = print_expr(*d);
    s += "[1/" + (precedence(*d) < 5 ? "(" + t + ")" : t) + "]";
  }
  return s;
}

bool same_ring_expr(const RingExpr& a, const RingExpr& b) {
  auto same_list = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!same_expr(*x[i], *y[i])) return false;
    }
    return true;
  };
  return a.kind == b.kind && a.field.characteristic == b.field.characteristic &&
         a.field.extensions == b.field.extensions && a.integer == b.integer &&
         a.bracket == b.bracket && a.vars == b.vars && a.number == b.number &&
         same_list(a.relations, b.relations) && same_list(a.inverted, b.inverted);
}

Ring elaborate(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::Kind::Integers: return RingPresentation::integers();
    case RingExpr::Kind::LocalIntegers:
      if (!is_prime_u32(e.number)) {
        throw ParseError("Z_(" + std::to_string(e.number) + "): not a prime", e.line, e.column);
      }
      return RingPresentation::local_integers(e.number);
    case RingExpr::Kind::Cyclic:
      if (e.number < 2 || e.number > 4096) {
        throw ParseError("Z/n needs 2 <= n <= 4096", e.line, e.column);
      }
      return RingPresentation::finite(FiniteRing::integers_mod(e.number), print_ring(e));
    case RingExpr::Kind::Chain:
      if (e.number < 1) throw ParseError("chain length must be positive", e.line, e.column);
      return chain_ring(e.number, build_field(e.field, e));
    case RingExpr::Kind::Affine: break;
  }
  const FieldDesc* field = e.integer ? rational_field() : build_field(e.field, e);
  std::set<std::string> seen;
  for (const auto& v : e.vars) {
    if (!seen.insert(v).second) {
      throw ParseError("variable '" + v + "' listed twice", e.line, e.column);
    }
    if (field->variable_index(v) >= 0) {
      throw ParseError("variable '" + v + "' shadows a field generator", e.line, e.column);
    }
  }
  AffineSpec spec;
  spec.ring = PolyRing::get(field, e.vars);
  spec.integer_coefficients = e.integer;
  for (const auto& r : e.relations) spec.relations.push_back(evaluate_polynomial(*r, spec.ring));
  for (const auto& d : e.inverted) spec.inverted.push_back(evaluate_polynomial(*d, spec.ring));
  spec.description = print_ring(e);
  return RingPresentation::affine(std::move(spec));
}

Ring parse_presentation(std::string_view text) { return elaborate(parse_ring(text)); }

}  // namespace unital
