#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"

#include <numeric>

#include "unital/error.hpp"
#include "unital/finite.hpp"

using namespace unital;

namespace {

std::vector<bool> ideal_of(const FiniteRing& r, std::initializer_list<Elem> gens) {
  std::vector<bool> out(r.size(), false);
  for (Elem g : gens) {
    for (std::size_t x = 0; x < r.size(); ++x) out[r.mul(static_cast<Elem>(x), g)] = true;
  }
  return out;
}


}  // namespace

TEST_CASE("ring axioms are enforced") {
  // 2x2 tables where 1 has no inverse for addition structure.
  std::vector<Elem> add = {0, 1, 1, 1};
  std::vector<Elem> mul = {0, 0, 0, 1};
  CHECK_THROWS_AS(FiniteRing("bad", 2, add, mul), PreconditionError);
  CHECK_THROWS_AS(FiniteRing::integers_mod(1), PreconditionError);
}

TEST_CASE("cyclic rings") {
  for (unsigned n = 2; n <= 60; ++n) {
    auto r = FiniteRing::integers_mod(n);
    CHECK(r->unit_additive() == oracle::cyclic_ua(n));
    CHECK(r->unit_additive() == r->nilradical_prime());
  }
}

TEST_CASE("equivalence reports on small rings") {
  auto z4 = FiniteRing::integers_mod(4);
  auto e4 = audit_equivalences(*z4);
  CHECK(e4.c1_unit_plus_one);
  CHECK(e4.c2_pairwise);
  CHECK(e4.c3_subring);
  CHECK(e4.c4_local_subring);
  CHECK(e4.c5_finite_sums);
  CHECK_FALSE(e4.reduced);
  CHECK(e4.consistent());

  auto z6 = FiniteRing::integers_mod(6);
  auto e6 = audit_equivalences(*z6);
  CHECK_FALSE(e6.c1_unit_plus_one);
  CHECK_FALSE(e6.c2_pairwise);
  CHECK_FALSE(e6.c3_subring);
  CHECK_FALSE(e6.c4_local_subring);
  CHECK_FALSE(e6.c5_finite_sums);
  CHECK(e6.reduced);
  CHECK_FALSE(e6.c6_field);
  CHECK(e6.consistent());

  auto f2 = FiniteRing::integers_mod(2);
  auto f2f2 = FiniteRing::product(*f2, *f2);
  CHECK(f2f2->unit_additive());
  CHECK(audit_equivalences(*f2f2).consistent());
  CHECK_FALSE(f2f2->nilradical_prime());
}

TEST_CASE("ideals and Jacobson radical") {
  auto z12 = FiniteRing::integers_mod(12);
  CHECK(enumerate_ideals(*z12).size() == 6);  // divisors of 12
  auto jac = jacobson_radical(*z12);
  for (Elem a = 0; a < 12; ++a) CHECK(jac[a] == (a % 6 == 0));
  auto f4 = FiniteRing::polynomial_quotient(2, {1, 1});
  CHECK(f4->size() == 4);
  CHECK(f4->units().size() == 3);
  CHECK(enumerate_ideals(*f4).size() == 2);
  CHECK(enumerate_subrings(*f4).size() == 2);
}

TEST_CASE("quotients by nil ideals") {
  auto z4 = FiniteRing::integers_mod(4);
  CHECK(audit_quotient_nil(*z4, ideal_of(*z4, {2})));
  auto z12 = FiniteRing::integers_mod(12);
  CHECK(audit_quotient_nil(*z12, ideal_of(*z12, {6})));
  CHECK_FALSE(FiniteRing::quotient(*z12, ideal_of(*z12, {6}))->unit_additive());
  CHECK_THROWS_AS(audit_quotient_nil(*z12, ideal_of(*z12, {3})), PreconditionError);
}

TEST_CASE("idealization") {
  auto z4 = FiniteRing::integers_mod(4);
  auto i4 = FiniteRing::idealization(*z4, 2);
  CHECK(i4->size() == 8);
  CHECK(i4->unit_additive());
  CHECK(audit_idealization(*z4, 2));
  auto z6 = FiniteRing::integers_mod(6);
  CHECK_FALSE(FiniteRing::idealization(*z6, 0)->unit_additive());
  CHECK(audit_idealization(*z6, 0));
  auto f3 = FiniteRing::integers_mod(3);
  CHECK(FiniteRing::idealization(*f3, 0)->unit_additive());
  CHECK(audit_idealization(*f3, 0));
}

TEST_CASE("unit preimages are saturated") {
  auto z12 = FiniteRing::integers_mod(12);
  CHECK(audit_saturation(*z12, ideal_of(*z12, {4})));
  auto z8 = FiniteRing::integers_mod(8);
  CHECK(audit_saturation(*z8, ideal_of(*z8, {2})));
  for (const auto& i : enumerate_ideals(*z12)) CHECK(audit_saturation(*z12, i));
}

TEST_CASE("intersections and pullbacks") {
  auto f4 = FiniteRing::polynomial_quotient(2, {1, 1});
  CHECK(audit_pullback(*f4));
  CHECK(audit_intersection(*f4, 8, 1));
  auto z2 = FiniteRing::integers_mod(2);
  auto prod = FiniteRing::product(*f4, *z2);
  CHECK(audit_intersection(*prod, 8, 2));
  CHECK(audit_pullback(*prod));
}

TEST_CASE("corpus size and determinism") {
  auto corpus = standard_corpus();
  CHECK(corpus.size() >= 5000);
  for (const auto& e : corpus) CHECK(e.ring->size() <= 256);
  std::vector<CorpusEntry> slice(corpus.begin(), corpus.begin() + 300);
  auto one = audit_corpus(slice, 1, 7);
  auto two = audit_corpus(slice, 3, 7);
  CHECK(one.rings == 300);
  CHECK(one.checks == two.checks);
  CHECK(one.unit_additive == two.unit_additive);
  CHECK(one.violations.empty());
  CHECK(two.violations.empty());
}

TEST_CASE("built-in constructions satisfy the axioms") {
  auto corpus = standard_corpus();
  std::set<std::string> families;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& e = corpus[i];
    // Every small ring, and a stride of the large ones.
    if (e.ring->size() > 64 && i % 37 != 0) continue;
    families.insert(e.family);
    CHECK_MESSAGE(e.ring->satisfies_axioms(), e.ring->name());
  }
  CHECK(families.size() == 5);

  auto z6 = FiniteRing::integers_mod(6);
  std::vector<bool> not_ideal(6, false);
  not_ideal[0] = not_ideal[1] = true;
  CHECK_THROWS_AS(FiniteRing::quotient(*z6, not_ideal), PreconditionError);
}
