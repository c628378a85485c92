#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unital/chain.hpp"
#include "unital/dsl.hpp"
#include "unital/error.hpp"
#include "unital/tower.hpp"

using namespace unital;

namespace {

using oracle::udim_oracle;

const SumCounterexample& neither(const Verdict& v) {
  return std::get<SumCounterexample>(v.certificate);
}

}  // namespace

TEST_CASE("fields and polynomial rings have udim 0") {
  for (const char* text : {"Q", "F_7", "Q(a,b)", "Q[x]/(x^2+1)"}) {
    auto u = udim(parse_presentation(text));
    CHECK(u.exact == Truth::True);
    CHECK(u.value == std::optional<std::uint32_t>(udim_oracle("field", 0)));
    auto c = ua_closure(parse_presentation(text));
    CHECK(c.ring->description() == parse_presentation(text)->description());
  }
  for (const char* text : {"Q[x]", "F_5[a,b,c]"}) {
    CHECK(udim(parse_presentation(text)).value == std::optional<std::uint32_t>(0));
  }
}

TEST_CASE("polynomial rings do not grow") {
  TowerState s = tower_start(parse_presentation("Q[x]"));
  CHECK(s.levels[0].generators.empty());
  TowerState t = tower_step(s);
  CHECK(t.stalled);
  CHECK(t.levels.size() == 1);
}

TEST_CASE("integers") {
  Ring zz = parse_presentation("ZZ");
  auto u = udim(zz);
  REQUIRE(u.exact == Truth::True);
  CHECK(*u.value == 1);
  const auto& w = neither(u.tower.levels[0].verdict);
  CHECK(w.sum.to_string() == "2");
  auto c = ua_closure(zz);
  CHECK(c.status == Truth::True);
  CHECK(c.ring->description() == "Q");
  CHECK(c.fraction_field);
  CHECK(replay(u.tower));

  for (const char* text : {"Z_(2)", "Z_(11)"}) {
    auto l = udim(parse_presentation(text));
    CHECK(l.value == std::optional<std::uint32_t>(udim_oracle("local", 0)));
    CHECK(l.tower.levels[0].verdict.rule == "jacobson");
  }
}

TEST_CASE("Z[x,2/x] has udim 2") {
  Ring r = parse_presentation("ZZ[x,y]/(x*y-2)");
  auto u = udim(r);
  REQUIRE(u.exact == Truth::True);
  CHECK(*u.value == 2);
  const auto& l1 = u.tower.levels[1];
  CHECK(l1.ring->description() == "Q[x][1/x]");
  const auto& w = neither(l1.verdict);
  CHECK(w.u.unit.to_string() == "x");
  CHECK(w.v.unit.to_string() == "1");
  CHECK(replay(w));
  // x*y = 2 puts x and y into V_1.
  bool found = false;
  for (const auto& d : l1.divisions) {
    found = found || (d.divisor.to_string() == "x" && d.target.to_string() == "2");
  }
  CHECK(found);
  auto c = ua_closure(r);
  CHECK(c.ring->description() == "Q(x)");
  CHECK(replay(u.tower));
}

TEST_CASE("chain rings have udim n") {
  for (const FieldDesc* k : {rational_field(), prime_field(5)}) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
      Ring r = chain_ring(n, k);
      auto u = udim(r);
      REQUIRE_MESSAGE(u.exact == Truth::True, r->description());
      CHECK(*u.value == static_cast<std::uint32_t>(udim_oracle("chain", static_cast<int>(n))));
      for (std::uint32_t i = 0; i < n; ++i) {
        const Verdict& v = u.tower.levels[i].verdict;
        CHECK(v.value == Truth::False);
        CHECK(std::holds_alternative<SumCounterexample>(v.certificate));
      }
      CHECK(u.tower.levels[n].verdict.rule == "field");
      CHECK(replay(u.tower));
      std::string expect = k->to_string() + "(x1";
      for (std::uint32_t j = 2; j <= n; ++j) expect += ",x" + std::to_string(j);
      CHECK(ua_closure(r).ring->description() == expect + ")");
    }
  }
}

TEST_CASE("chain(2) step 1 finds f1+1 = y1*y2") {
  Ring r = chain_ring(2, rational_field());
  TowerState s = tower_step(tower_start(r));
  const auto& l1 = s.levels[1];
  bool found = false;
  for (const auto& d : l1.divisions) {
    found = found || (d.target.to_string() == "y1*y2" && d.divisor.to_string() == "y1");
  }
  CHECK(found);
  CHECK(l1.ring->description() == "Q(x1)[y1][1/y1]");
  // y1 and y2 are units one level up.
  CHECK(is_unit(to_level(s, 1, parse_element(r, "y1"))).truth == Truth::True);
  CHECK(is_unit(to_level(s, 1, parse_element(r, "y2"))).truth == Truth::True);
}

TEST_CASE("W_i inside V_i inside W_(i+1), and products stay units") {
  for (const char* text : {"chain(Q,3)", "ZZ[x,y]/(x*y-2)", "Q[x,y]/(y^2-x*y-1)"}) {
    auto u = udim(parse_presentation(text));
    const auto& st = u.tower;
    for (std::size_t i = 0; i < st.levels.size(); ++i) {
      const auto& l = st.levels[i];
      for (const auto& w : l.w_members) {
        CHECK(is_unit(to_level(st, i, w.value)).truth == Truth::True);
      }
      if (i + 1 < st.levels.size()) {
        for (const auto& g : l.generators) {
          CHECK(is_unit(to_level(st, i + 1, g)).truth == Truth::True);
        }
      }
      for (std::size_t a = 0; a < l.w_members.size() && a < 4; ++a) {
        for (std::size_t b = a; b < l.w_members.size() && b < 4; ++b) {
          RingElement p = l.w_members[a].value * l.w_members[b].value;
          CHECK(is_unit(to_level(st, i, p)).truth == Truth::True);
        }
      }
    }
  }
}

TEST_CASE("laurent rings and unit variables") {
  for (const char* text : {"Q[x][1/x]", "Q[x,y][1/(x*y)]", "F_3[t][1/(t*(t-1))]",
                           "Q[x,y]/(y^2-x*y-1)"}) {
    auto u = udim(parse_presentation(text));
    CHECK_MESSAGE(u.value == std::optional<std::uint32_t>(udim_oracle("laurent", 1)), text);
    CHECK(replay(u.tower));
  }
  CHECK(ua_closure(parse_presentation("Q[x,y][1/(x*y)]")).ring->description() == "Q(x,y)");
}

TEST_CASE("udim never exceeds the Krull dimension") {
  struct Case {
    const char* text;
    std::uint32_t dim;
  };
  for (const Case& c : {Case{"Q", 0}, Case{"Q[x]", 1}, Case{"Q[x][1/x]", 1},
                        Case{"Q[x,y][1/(x*y)]", 2}, Case{"Q[x,y,z][1/(x*y*z-1)]", 3},
                        Case{"chain(Q,2)", 2}, Case{"chain(F_5,3)", 3},
                        Case{"F_7[a,b][1/(a*b+1)]", 2}, Case{"Q[s,t][1/(s*(t-1))]", 2}}) {
    auto u = udim(parse_presentation(c.text));
    REQUIRE_MESSAGE(u.value.has_value(), std::string(c.text));
    CHECK_MESSAGE(*u.value <= c.dim, std::string(c.text));
  }
}

TEST_CASE("unknown results report an interval") {
  Ring node = parse_presentation("Q[x,y]/(y^2-x^2-x^3)");
  auto u = udim(node);
  CHECK(u.exact == Truth::Unknown);
  CHECK(u.lower == 0);
  CHECK_FALSE(u.upper.has_value());
  CHECK(ua_closure(node).status == Truth::Unknown);

  TowerOptions o;
  o.hints.embedding = EmbeddingHint{{{"x", "t^2-1"}, {"y", "t^3-t"}}};
  CHECK(udim(node, o).value == std::optional<std::uint32_t>(0));

  TowerOptions capped;
  capped.levels = 1;
  auto c3 = udim(chain_ring(3, rational_field()), capped);
  CHECK(c3.exact == Truth::Unknown);
  CHECK(c3.lower == 2);
}

TEST_CASE("finite rings") {
  CHECK(udim(parse_presentation("Z/8")).value == std::optional<std::uint32_t>(0));
  CHECK_THROWS_AS(udim(parse_presentation("Z/6")), PreconditionError);
}

TEST_CASE("monotonicity audit") {
  Ring q = parse_presentation("Q");
  Ring qx = parse_presentation("Q[x]");
  auto a = monotonicity_audit(q, qx, {}, 3, true);
  CHECK(a.ok());
  CHECK(a.udim_agree);

  Ring zz = parse_presentation("ZZ");
  Ring zx = parse_presentation("ZZ[x]");
  auto b = monotonicity_audit(zz, zx, {}, 3, true);
  CHECK(b.ok());
  CHECK(b.checked > 0);
  REQUIRE(b.source.value.has_value());
  CHECK(*b.source.value == 1);
  CHECK(*b.target.value == 1);
  CHECK(b.udim_agree);

  Ring lx = parse_presentation("Q[x][1/x]");
  auto c = monotonicity_audit(qx, lx, {parse_element(lx, "x")}, 2);
  CHECK(c.ok());
  CHECK(c.extra_target_units);

  Ring c2 = chain_ring(2, rational_field());
  Ring c2x = parse_presentation("Q[y1,y2,z][1/(y1*y2-1)]");
  auto d = monotonicity_audit(c2, c2x, {parse_element(c2x, "y1"), parse_element(c2x, "y2")}, 3,
                              true);
  CHECK(d.ok());
  CHECK(d.udim_agree);

  CHECK_THROWS_AS(monotonicity_audit(lx, qx, {parse_element(qx, "x")}, 1), PreconditionError);
}
