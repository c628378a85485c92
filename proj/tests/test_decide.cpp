#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unital/chain.hpp"
#include "unital/decide.hpp"
#include "unital/dsl.hpp"
#include "unital/error.hpp"

using namespace unital;

namespace {

RingElement el(const Ring& r, const std::string& text) { return parse_element(r, text); }

const SumCounterexample& witness(const Verdict& v) {
  return std::get<SumCounterexample>(v.certificate);
}

Hints node_hint() {
  Hints h;
  h.embedding = EmbeddingHint{{{"x", "t^2-1"}, {"y", "t^3-t"}}};
  return h;
}

}  // namespace

TEST_CASE("node with an embedding hint") {
  Ring node = parse_presentation("Q[x,y]/(y^2-x^2-x^3)");
  Verdict v = check_unit_additive(node, {}, node_hint());
  REQUIRE(v.value == Truth::True);
  CHECK(v.rule == "embedding");
  const auto& c = std::get<EmbeddingCert>(v.certificate);
  CHECK(c.target == "Q[t]");
  CHECK(c.relation_images == std::vector<std::string>{"0"});
  CHECK(replay(v));
}

TEST_CASE("rejected hints fall through") {
  Ring node = parse_presentation("Q[x,y]/(y^2-x^2-x^3)");
  Hints bad;
  bad.embedding = EmbeddingHint{{{"x", "t"}, {"y", "t"}}};
  Verdict v = check_unit_additive(node, {}, bad);
  CHECK(v.notes.size() == 1);
  CHECK(v.rule != "embedding");
  CHECK(replay(v));

  // x -> 0, y -> 0 kills the relation but is far from injective.
  Hints zero;
  zero.embedding = EmbeddingHint{{{"x", "0"}, {"y", "0"}}};
  CHECK_THROWS_AS(check_embedding(node, *zero.embedding), HintRejected);

  Hints w;
  w.weights = std::vector<long long>{1, 0};
  CHECK_THROWS_AS(check_grading(node, *w.weights), HintRejected);
}

TEST_CASE("grading rule") {
  Ring cusp = parse_presentation("Q[x,y]/(y^2-x^3)");
  Hints h;
  h.weights = std::vector<long long>{2, 3};
  Verdict v = check_unit_additive(cusp, {}, h);
  REQUIRE(v.value == Truth::True);
  CHECK(v.rule == "grading");
  CHECK(std::get<GradingCert>(v.certificate).relation_degrees == std::vector<long long>{6});
  CHECK(replay(v));
}

TEST_CASE("search finds the pair (y, x-y)") {
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  Verdict v = check_unit_additive(s);
  REQUIRE(v.value == Truth::False);
  CHECK(v.rule == "search");
  const auto& w = witness(v);
  CHECK(w.u.unit.to_string() == "y");
  CHECK(w.v.unit.to_string() == "x-y");
  CHECK(w.sum.to_string() == "x");
  CHECK(replay(v));
}

TEST_CASE("field and polynomial rules") {
  for (const char* text : {"Q", "Q[x]/(x^2-2)", "F_5(a)", "Q(x1)[y]/(y^2-x1)"}) {
    Verdict v = check_unit_additive(parse_presentation(text));
    CHECK_MESSAGE(v.rule == "field", text);
    CHECK(v.value == Truth::True);
    CHECK(replay(v));
  }
  for (const char* text : {"Q[x]", "F_3[a,b,c]", "Q(s)[x,y]"}) {
    Verdict v = check_unit_additive(parse_presentation(text));
    CHECK(v.rule == "polynomial");
    CHECK(replay(v));
  }
}

TEST_CASE("laurent ring and chain rings fail") {
  Verdict l = check_unit_additive(parse_presentation("Q[x][1/x]"));
  REQUIRE(l.value == Truth::False);
  CHECK(witness(l).u.unit.to_string() == "x");
  CHECK(witness(l).v.unit.to_string() == "1");
  CHECK(witness(l).sum.to_string() == "x+1");
  CHECK(replay(l));

  Verdict c2 = check_unit_additive(chain_ring(2, rational_field()));
  REQUIRE(c2.value == Truth::False);
  CHECK(witness(c2).u.unit.to_string() == "y1*y2-1");
  CHECK(witness(c2).v.unit.to_string() == "1");
  CHECK(replay(c2));

  Verdict c3 = check_unit_additive(chain_ring(3, prime_field(5)));
  CHECK(c3.value == Truth::False);
  CHECK(replay(c3));
}

TEST_CASE("integer plugins") {
  Verdict z = check_unit_additive(parse_presentation("ZZ"));
  REQUIRE(z.value == Truth::False);
  CHECK(witness(z).u.unit.to_string() == "1");
  CHECK(witness(z).v.unit.to_string() == "1");
  CHECK(witness(z).sum.to_string() == "2");
  CHECK(replay(z));

  Verdict loc = check_unit_additive(parse_presentation("Z_(7)"));
  REQUIRE(loc.value == Truth::False);
  CHECK(loc.rule == "jacobson");
  const auto& j = std::get<JacobsonCert>(loc.certificate);
  CHECK(j.pair.sum.to_string() == "7");
  CHECK(replay(loc));

  Verdict half = check_unit_additive(parse_presentation("ZZ[1/2]"));
  CHECK(half.value == Truth::False);
  CHECK(replay(half));
}

TEST_CASE("finite rings agree with the cyclic oracle") {
  for (std::uint32_t n = 2; n <= 60; ++n) {
    Ring r = parse_presentation("Z/" + std::to_string(n));
    Verdict v = check_unit_additive(r);
    CHECK_MESSAGE((v.value == Truth::True) == oracle::cyclic_ua(n), n);
    CHECK(v.value != Truth::Unknown);
    CHECK(replay(v));
  }
}

TEST_CASE("larger bounds never lose a counterexample") {
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  SearchBounds small;
  small.max_degree = 1;
  SearchBounds big;
  big.max_degree = 3;
  big.max_summands = 3;
  Verdict a = check_unit_additive(s, small);
  Verdict b = check_unit_additive(s, big);
  CHECK(a.value == Truth::False);
  CHECK(b.value == Truth::False);
  CHECK(b.candidates >= a.candidates);

  // The node's units are the scalars, so the search alone cannot decide.
  Ring node = parse_presentation("Q[x,y]/(y^2-x^2-x^3)");
  Verdict u = check_unit_additive(node);
  CHECK(u.value == Truth::Unknown);
  CHECK(replay(u));
}

TEST_CASE("search is deterministic under truncation") {
  Ring r = parse_presentation("Q[a,b,c]/(a*b*c-1)");
  SearchBounds b;
  b.max_candidates = 60;
  b.seed = 7;
  Verdict v1 = check_unit_additive(r, b);
  Verdict v2 = check_unit_additive(r, b);
  CHECK(v1.value == v2.value);
  CHECK(v1.candidates == v2.candidates);
  if (v1.value == Truth::False) CHECK(witness(v1).sum == witness(v2).sum);
}

TEST_CASE("bounds validation") {
  SearchBounds b;
  b.pool = {0, 1};
  CHECK_THROWS_AS(check_unit_additive(parse_presentation("Q[x]"), b), PreconditionError);
}

TEST_CASE("torus maps") {
  Ring s = parse_presentation("Q[x,y]/(y^2-x*y-1)");
  TorusMap m = build_torus_map(s, el(s, "y"));
  CHECK(m.injective == Truth::True);
  CHECK(m.kernel.empty());
  CHECK(m.relation_checks);

  Ring qx = parse_presentation("Q[x]");
  TorusMap c = build_torus_map(qx, el(qx, "3"));
  REQUIRE(c.kernel.size() == 1);
  CHECK(c.kernel[0].to_string() == "t-3");
  CHECK(c.injective == Truth::False);

  CHECK_THROWS_AS(build_torus_map(s, el(s, "x")), PreconditionError);
}
