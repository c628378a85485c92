#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "unital/error.hpp"
#include "unital/polynomial.hpp"
#include "unital/scalar.hpp"

using namespace unital;

namespace {

Scalar rat(long long n, long long d = 1) {
  return Scalar::from_rational(rational_field(), mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))));
}

// Random element of Q(x1,x2): small integer polynomials over small ones.
Scalar random_function(const FieldDesc* f, std::mt19937_64& rng) {
  const PolyRing* r = f->fraction_ring();
  std::uniform_int_distribution<int> coeff(-3, 3), expo(0, 2);
  auto poly = [&] {
    std::vector<Term> ts;
    for (int i = 0; i < 3; ++i) {
      ts.push_back({Monomial({static_cast<std::uint32_t>(expo(rng)),
                              static_cast<std::uint32_t>(expo(rng))}),
                    Scalar::from_int(r->field(), coeff(rng))});
    }
    return Polynomial::from_terms(r, ts);
  };
  Polynomial den = poly();
  while (den.is_zero()) den = poly();
  return Scalar::from_fraction(f, poly(), den);
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK((rat(1, 2) + rat(1, 3)) == rat(5, 6));
  CHECK((rat(1, 2) + rat(1, 3)).to_string() == "5/6");
  CHECK(rat(-6, 8).to_string() == "-3/4");
  CHECK_THROWS_AS(rat(1) / rat(0), DivisionByZero);
}

TEST_CASE("prime field arithmetic") {
  const FieldDesc* f5 = prime_field(5);
  CHECK((Scalar::from_int(f5, 3) * Scalar::from_int(f5, 4)) == Scalar::from_int(f5, 2));
  CHECK(Scalar::from_int(f5, -1).to_string() == "4");
  CHECK(Scalar::from_int(f5, 3).inverse() == Scalar::from_int(f5, 2));
  CHECK_THROWS_AS(prime_field(6), PreconditionError);
  CHECK_THROWS_AS(Scalar::from_int(f5, 1) + rat(1), DomainError);
  CHECK(is_prime_u32(2147483647ULL));
  CHECK_FALSE(is_prime_u32(2147483649ULL));
}

TEST_CASE("function field normalization") {
  const FieldDesc* qx = extend_by_fractions(rational_field(), {"x"});
  const PolyRing* r = qx->fraction_ring();
  Polynomial x = Polynomial::variable(r, "x");
  Polynomial one = Polynomial::constant(r, 1);
  Polynomial num = x * x - one, den = x - one;
  Scalar s = Scalar::from_fraction(qx, num, den);
  CHECK(s.denominator().is_one());
  CHECK(s.numerator() == x + one);
  // cross-multiplication oracle
  CHECK(num * s.denominator() == s.numerator() * den);
  Scalar again = Scalar::from_fraction(qx, s.numerator(), s.denominator());
  CHECK(again.to_string() == s.to_string());

  Scalar half = Scalar::from_fraction(qx, x, x.scale(rat(2)));
  CHECK(half == Scalar::from_rational(qx, mpq_class(1, 2)));
  CHECK(Scalar::from_fraction(qx, one, x.scale(rat(-2))).denominator() == x);
}

TEST_CASE("extend_by_fractions") {
  const FieldDesc* q1 = extend_by_fractions(rational_field(), {"x1"});
  CHECK(q1->to_string() == "Q(x1)");
  const FieldDesc* f51 = extend_by_fractions(prime_field(5), {"x1"});
  const FieldDesc* f512 = extend_by_fractions(f51, {"x2"});
  CHECK(f512 == extend_by_fractions(prime_field(5), {"x1", "x2"}));
  CHECK(f512->to_string() == "F_5(x1,x2)");
  CHECK_THROWS_AS(extend_by_fractions(rational_field(), {}), PreconditionError);
  CHECK_THROWS_AS(extend_by_fractions(q1, {"x1"}), PreconditionError);
  // embedding of the base is a homomorphism
  Scalar a = Scalar::generator(q1, 0) + Scalar::one(q1);
  Scalar b = Scalar::generator(q1, 0).inverse();
  const FieldDesc* q12 = extend_by_fractions(q1, {"x2"});
  CHECK(embed_scalar(a * b, q12) == embed_scalar(a, q12) * embed_scalar(b, q12));
  CHECK(embed_scalar(a + b, q12) == embed_scalar(a, q12) + embed_scalar(b, q12));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(20260415);
  const FieldDesc* q = rational_field();
  const FieldDesc* f7 = prime_field(7);
  const FieldDesc* qxy = extend_by_fractions(q, {"x1", "x2"});
  std::uniform_int_distribution<long long> small(-50, 50);
  auto check = [](const Scalar& a, const Scalar& b, const Scalar& c) {
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) REQUIRE((a / b) * b == a);
  };
  for (int i = 0; i < 10000; ++i) {
    check(rat(small(rng), 1 + (small(rng) & 31)), rat(small(rng), 1 + (small(rng) & 31)),
          rat(small(rng), 1 + (small(rng) & 31)));
    check(Scalar::from_int(f7, small(rng)), Scalar::from_int(f7, small(rng)),
          Scalar::from_int(f7, small(rng)));
  }
  for (int i = 0; i < 300; ++i) {
    Scalar a = random_function(qxy, rng), b = random_function(qxy, rng),
           c = random_function(qxy, rng);
    check(a, b, c);
    Scalar renorm = Scalar::from_fraction(qxy, a.numerator(), a.denominator());
    CHECK(renorm.to_string() == a.to_string());
  }
}
