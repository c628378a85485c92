#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "unital/chain.hpp"
#include "unital/dsl.hpp"
#include "unital/error.hpp"
#include "unital/ring.hpp"

using namespace unital;

namespace {

RingElement el(const Ring& r, const std::string& text) { return parse_element(r, text); }

}  // namespace

TEST_CASE("zero and nilpotent tests") {
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  CHECK(is_zero(el(s, "y^2-x*y-1")));
  CHECK_FALSE(is_zero(el(s, "x")));
  CHECK(is_zero(RingElement::zero(s)));

  Ring node = parse_presentation("Q[x,y]/(y^2-x^2-x^3)");
  CHECK_FALSE(is_nilpotent(el(node, "x")));
  Ring z4 = parse_presentation("Z/4");
  CHECK(is_nilpotent(el(z4, "2")));
  CHECK_FALSE(is_nilpotent(el(z4, "3")));
  CHECK(is_nilpotent(RingElement::zero(node)));
}

TEST_CASE("unit tests with witnesses") {
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  auto y = is_unit(el(s, "y"));
  REQUIRE(y.truth == Truth::True);
  CHECK(y.witness->inverse == el(s, "y-x"));
  CHECK(y.witness->exponent == 0);
  CHECK(replay(*y.witness));

  auto x = is_unit(el(s, "x"));
  REQUIRE(x.truth == Truth::False);
  CHECK(x.proof->reason == NonUnitReason::Radical);
  CHECK(replay(*x.proof));

  Ring laurent = parse_presentation("Q[x][1/x]");
  auto lx = is_unit(el(laurent, "x"));
  REQUIRE(lx.truth == Truth::True);
  CHECK(lx.witness->inverse == el(laurent, "1/x"));
  CHECK(lx.witness->inverse.to_string() == "1/x");
  CHECK(replay(*lx.witness));
  auto x1 = is_unit(el(laurent, "x+1"));
  CHECK(x1.truth == Truth::False);
  CHECK(replay(*x1.proof));

  // x^2 + x = x(x+1): a unit times a non-unit.
  CHECK(is_unit(el(laurent, "x^2+x")).truth == Truth::False);
  CHECK(is_unit(el(laurent, "3*x^5")).truth == Truth::True);
}

TEST_CASE("integer presentations and plugins") {
  Ring zz = parse_presentation("ZZ");
  CHECK(is_unit(el(zz, "-1")).truth == Truth::True);
  auto two = is_unit(el(zz, "2"));
  CHECK(two.truth == Truth::False);
  CHECK(replay(*two.proof));
  CHECK_THROWS_AS(el(zz, "1/2"), PreconditionError);

  Ring z5 = parse_presentation("Z_(5)");
  CHECK(is_unit(el(z5, "3/2")).truth == Truth::True);
  CHECK(is_unit(el(z5, "10")).truth == Truth::False);
  CHECK_THROWS_AS(el(z5, "1/5"), PreconditionError);

  Ring r = parse_presentation("ZZ[x,y]/(x*y-2)");
  auto x = is_unit(el(r, "x"));
  REQUIRE(x.truth == Truth::False);
  CHECK(x.proof->reason == NonUnitReason::ModPrime);
  CHECK(x.proof->prime == 2);
  CHECK(replay(*x.proof));
  CHECK(is_unit(el(r, "-1")).truth == Truth::True);
  CHECK(is_unit(el(r, "2")).truth == Truth::False);
  CHECK(el(r, "x*y") == el(r, "2"));

  Ring zx = parse_presentation("ZZ[x][1/x]");
  auto inv = is_unit(el(zx, "x^3"));
  REQUIRE(inv.truth == Truth::True);
  CHECK(replay(*inv.witness));
}

TEST_CASE("classify unit sums") {
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  auto zero = classify_unit_sum(el(s, "1"), el(s, "-1"));
  CHECK(zero.kind == SumClass::Nilpotent);
  auto c = classify_unit_sum(el(s, "y"), el(s, "x-y"));
  REQUIRE(c.kind == SumClass::Neither);
  CHECK(c.sum.to_string() == "x");
  CHECK(replay(*c.counterexample));
  CHECK_THROWS_AS(classify_unit_sum(el(s, "x"), el(s, "y")), PreconditionError);

  Ring laurent = parse_presentation("Q[x][1/x]");
  auto l = classify_unit_sum(el(laurent, "x"), el(laurent, "1/x"));
  CHECK(l.kind == SumClass::Neither);
  CHECK(replay(*l.counterexample));
  CHECK(classify_unit_sum(el(laurent, "x"), el(laurent, "x")).kind == SumClass::Unit);
}

TEST_CASE("products of units are units") {
  for (const char* text : {"Q[x,y]/(y^2-x*y-1)", "Q[x][1/x]", "chain(Q,2)", "Q[t][1/(t*(t-1))]"}) {
    Ring r = parse_presentation(text);
    std::vector<RingElement> units;
    for (const char* e : {"1", "-2", "y", "x-y", "x", "1/x", "t", "t-1", "y1*y2-1", "y1", "y2"}) {
      try {
        RingElement v = el(r, e);
        if (is_unit(v).truth == Truth::True) units.push_back(v);
      } catch (const Error&) {
      }
    }
    CHECK(units.size() >= 2);
    for (const auto& a : units) {
      for (const auto& b : units) CHECK(is_unit(a * b).truth == Truth::True);
    }
  }
}

TEST_CASE("finite handles: unit plus nilpotent is a unit") {
  for (const char* text : {"Z/8", "Z/12", "Z/36", "Z/49"}) {
    Ring r = parse_presentation(text);
    const auto& t = r->table();
    for (Elem u : t.units()) {
      for (Elem n : t.nilpotents()) {
        auto sum = RingElement::from_index(r, u) + RingElement::from_index(r, n);
        CHECK(is_unit(sum).truth == Truth::True);
      }
    }
    for (Elem a = 0; a < t.size(); ++a) {
      auto v = is_unit(RingElement::from_index(r, a));
      CHECK((v.truth == Truth::True) == t.is_unit(a));
      CHECK(is_nilpotent(RingElement::from_index(r, a)) == t.is_nilpotent(a));
    }
  }
}

TEST_CASE("element parsing and printing") {
  Ring c = parse_presentation("chain(Q,2)");
  RingElement inv = el(c, "1/(y1*y2-1)");
  CHECK(inv * el(c, "y1*y2-1") == RingElement::one(c));
  CHECK(el(c, inv.to_string()) == inv);
  CHECK_THROWS_AS(el(c, "1/y2"), PreconditionError);
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  // 1/y is a unit's inverse even though nothing is formally inverted.
  CHECK(el(s, "1/y") == el(s, "y-x"));
  CHECK_THROWS_AS(el(s, "z"), ParseError);
}

TEST_CASE("ring DSL") {
  auto node = parse_ring("Q[x,y]/(y^2-x^2-x^3)");
  CHECK(node.vars.size() == 2);
  CHECK(node.relations.size() == 1);
  auto loc = parse_ring("Q[t][1/(t*(t-1))]");
  CHECK(loc.relations.empty());
  CHECK(loc.inverted.size() == 1);
  try {
    parse_ring("Q[x]/(");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_presentation("Q[x]/(y)"), ParseError);
  CHECK_THROWS_AS(parse_presentation("Q[x,x]"), ParseError);
  CHECK_THROWS_AS(parse_presentation("F_6[x]"), ParseError);
  CHECK_THROWS_AS(parse_presentation("Q[x]/(x,x-1)"), PreconditionError);
  CHECK_THROWS_AS(parse_presentation("Q[x]/(x)[1/x]"), PreconditionError);

  for (const char* text :
       {"Q[x,y]/(y^2-x*y-1)", "Q[x][1/x]", "F_5[y1,y2][1/(y1*y2-1)]", "ZZ", "Z_(5)", "Z/12",
        "chain(Q,2)", "chain(F_5,3)", "Q(x1)[y1][1/y1]", "ZZ[x,y]/(x*y-2)", "Q(x)",
        "Q[t][1/(t*(t-1))]", "Q[a,b]/(a-(b+1)^2,-a*-b)", "F_7(a)(b)[c]/(c^2-a/b)", "Q",
        "ZZ[x]", "ZZ[1/2]", "Q[x,y,z]/(x^2-y^3,z-2*x*y)[1/x][1/(y-1)]"}) {
    auto a = parse_ring(text);
    auto b = parse_ring(print_ring(a));
    CHECK_MESSAGE(same_ring_expr(a, b), text);
    CHECK(print_ring(b) == print_ring(a));
    Ring r = elaborate(a);
    // Generated descriptions re-elaborate to the same ideal.
    if (r->kind() == RingKind::Affine) {
      Ring again = parse_presentation(r->description());
      CHECK(again->ideal().basis().size() == r->ideal().basis().size());
    }
  }
}

TEST_CASE("generated descriptions parse back") {
  const FieldDesc* qx = extend_by_fractions(rational_field(), {"x1"});
  AffineSpec spec;
  spec.ring = PolyRing::get(qx, {"y1", "y2"});
  spec.relations = {parse_polynomial("(x1+1)/x1*y1*y2-1/(x1^2+1)", spec.ring)};
  spec.inverted = {parse_polynomial("y1", spec.ring), parse_polynomial("2*y2", spec.ring)};
  Ring r = RingPresentation::affine(spec);
  Ring again = parse_presentation(r->description());
  REQUIRE(again->ideal().basis().size() == 1);
  CHECK(again->ideal().basis()[0] == r->ideal().basis()[0]);
  CHECK(again->inverted() == r->inverted());
}

TEST_CASE("chain rings") {
  Ring c1 = chain_ring(1, rational_field());
  CHECK(c1->inverted()[0].to_string() == "y1");
  Ring c2 = chain_ring(2, rational_field());
  CHECK(c2->inverted()[0].to_string() == "y1*y2-1");
  Ring c3 = chain_ring(3, prime_field(5));
  CHECK(c3->inverted()[0] == parse_polynomial("y1*(y2*y3-1)-1", c3->poly_ring()));
  CHECK(c3->description() == "chain(F_5,3)");
  CHECK(c3->aux().size() == 3);
  for (std::uint32_t n = 1; n <= 4; ++n) {
    auto rep = chain_iso(n, rational_field());
    CHECK(rep.all_hold());
    CHECK(rep.checks.size() == 2 * n);
  }
  auto rep2 = chain_iso(2, rational_field());
  CHECK(rep2.checks[0].value == rep2.checks[0].expected);
}

TEST_CASE("ring maps") {
  Ring node = parse_presentation("Q[x,y]/(y^2-x^2-x^3)");
  Ring line = parse_presentation("Q[t]");
  RingMap m(node, line, {el(line, "t^2-1"), el(line, "t^3-t")});
  CHECK(m.well_defined());
  CHECK(m(el(node, "y^2-x^2-x^3")).is_zero());
  Ring laurent = parse_presentation("Q[t][1/t]");
  Ring lx = parse_presentation("Q[x][1/x]");
  RingMap inv(lx, laurent, {el(laurent, "1/t")});
  CHECK(inv.well_defined());
  CHECK(inv(el(lx, "1/x")) == el(laurent, "t"));
  RingMap bad(lx, line, {el(line, "t")});
  CHECK_FALSE(bad.well_defined());
}

TEST_CASE("DSL round trip over the presentation corpus") {
  for (const auto& e : corpus::presentations()) {
    auto a = parse_ring(e.text);
    auto b = parse_ring(print_ring(a));
    CHECK_MESSAGE(same_ring_expr(a, b), e.text);
    CHECK(parse_presentation(print_ring(a))->description() ==
          parse_presentation(e.text)->description());
  }
}
