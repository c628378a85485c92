#pragma once

// Presented commutative rings and their elements. An affine presentation is
// k[X]/P localized at finitely many inverted polynomials D; P is trusted to
// be prime. The integers, Z localized at a prime, and finite rings given by
// tables are separate kinds whose unit tests are arithmetic.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unital/finite.hpp"
#include "unital/groebner.hpp"
#include "unital/polynomial.hpp"

namespace unital {

enum class Truth { True, False, Unknown };
std::string to_string(Truth t);

enum class RingKind { Affine, Integers, LocalIntegers, Finite };

/// A named polynomial carried along with a presentation, e.g. the f_j of a
/// chain ring. Aux elements feed the tower's divisor pool.
struct AuxElement {
  std::string name;
  Polynomial value;
};

struct AffineSpec {
  const PolyRing* ring = nullptr;
  std::vector<Polynomial> relations;
  std::vector<Polynomial> inverted;
  /// Coefficients are integers: the ring is Z[X]/P_Z[1/D], studied inside
  /// its rationalization Q[X]/P[1/D].
  bool integer_coefficients = false;
  bool prime_asserted = true;
  std::vector<AuxElement> aux;
  /// Replace P by its saturation (P : d^inf). Used for rings produced by
  /// elimination, where the generators given may not be saturated.
  bool saturate = false;
  /// DSL text; generated when empty.
  std::string description;
};

class RingPresentation;
using Ring = std::shared_ptr<const RingPresentation>;

class RingPresentation {
 public:
  /// Throws PreconditionError if 1 in P or some inverted element lies in P.
  static Ring affine(AffineSpec spec);
  static Ring integers();
  static Ring local_integers(std::uint32_t p);
  static Ring finite(FiniteRingPtr table, std::string description = "");

  RingKind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  bool prime_asserted() const { return prime_asserted_; }

  // Affine accessors.
  const PolyRing* poly_ring() const { return ring_; }
  const FieldDesc* field() const;
  const GroebnerBasis& ideal() const { return *ideal_; }
  /// Relation generators as given (integer coefficients for Z-presentations).
  const std::vector<Polynomial>& input_relations() const { return input_relations_; }
  const std::vector<Polynomial>& inverted() const { return inverted_; }
  /// Product of the inverted elements (1 when none).
  const Polynomial& inverted_product() const { return d_; }
  bool integer_coefficients() const { return integer_; }
  const std::vector<AuxElement>& aux() const { return aux_; }
  /// Over a field, no relations, every inverted element a scalar.
  bool is_polynomial_ring() const;

  std::uint32_t prime() const { return prime_; }
  const FiniteRing& table() const { return *table_; }
  FiniteRingPtr table_ptr() const { return table_; }

 private:
  RingPresentation() = default;
  static std::string describe_affine(const AffineSpec& spec, const std::vector<Polynomial>& rels);

  RingKind kind_ = RingKind::Affine;
  std::string description_;
  bool prime_asserted_ = false;
  const PolyRing* ring_ = nullptr;
  std::shared_ptr<const GroebnerBasis> ideal_;
  std::vector<Polynomial> input_relations_;
  std::vector<Polynomial> inverted_;
  Polynomial d_;
  bool integer_ = false;
  std::vector<AuxElement> aux_;
  std::uint32_t prime_ = 0;
  FiniteRingPtr table_;
};

/// An element of a presented ring. Affine elements are num / prod D_j^a_j
/// with num in normal form modulo P (kept as given for Z-presentations).
/// Integers and local integers hold a rational; finite elements an index.
class RingElement {
 public:
  RingElement() = default;
  static RingElement zero(const Ring& ring);
  static RingElement one(const Ring& ring);
  static RingElement from_int(const Ring& ring, long long value);
  static RingElement from_scalar(const Ring& ring, const Scalar& value);
  /// Affine only.
  static RingElement from_polynomial(const Ring& ring, const Polynomial& num,
                                     std::vector<std::uint32_t> den = {});
  static RingElement from_rational(const Ring& ring, const mpq_class& value);
  static RingElement from_index(const Ring& ring, Elem index);
  /// The j-th inverted element's inverse.
  static RingElement inverse_of_inverted(const Ring& ring, std::size_t j);

  const Ring& ring() const { return ring_; }
  const Polynomial& numerator() const { return num_; }
  const std::vector<std::uint32_t>& den_exponents() const { return den_; }
  /// prod D_j^a_j as a polynomial.
  Polynomial denominator() const;
  const mpq_class& rational() const { return q_; }
  Elem index() const { return index_; }

  bool is_zero() const;
  /// A nonzero constant with no denominator (affine), or any value that is
  /// a scalar of the coefficient field.
  bool is_scalar() const;
  /// Total degree of the numerator minus nothing; used for ordering.
  std::uint64_t degree() const;
  std::size_t term_count() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement pow(std::uint32_t n) const;
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  /// "num" or "(num)/(den)" with the denominator written as a product of
  /// inverted elements; parse_element reads it back.
  std::string to_string() const;

 private:
  void normalize();
  void require_same(const RingElement& o) const;

  Ring ring_;
  Polynomial num_;
  std::vector<std::uint32_t> den_;
  mpq_class q_;
  Elem index_ = 0;
};

/// Parses an element of `ring`: a polynomial expression in the ring's
/// variables, optionally divided by a product of inverted elements or by
/// another unit. Throws ParseError or PreconditionError.
RingElement parse_element(const Ring& ring, const std::string& text);

bool is_zero(const RingElement& e);
/// Exact: prime-asserted presentations are domains, so this is is_zero;
/// finite rings use the tables.
bool is_nilpotent(const RingElement& e);

/// num(unit) * cofactor = d^exponent modulo P (affine), and
/// unit * inverse = 1 in the ring.
struct UnitWitness {
  RingElement unit;
  RingElement inverse;
  Polynomial cofactor;
  std::uint32_t exponent = 0;
};

enum class NonUnitReason { Radical, ModPrime, Arithmetic, Table };
std::string to_string(NonUnitReason r);

/// Radical: (P, num, 1 - z d) is a proper ideal over the coefficient field.
/// ModPrime: the same ideal, reduced modulo `prime`, is proper.
/// Arithmetic: |n| != 1 in Z, or p divides the numerator in Z_(p).
/// Table: the element has no inverse in the finite ring's table.
struct NonUnitProof {
  RingElement element;
  NonUnitReason reason = NonUnitReason::Radical;
  std::uint32_t prime = 0;
};

struct UnitVerdict {
  Truth truth = Truth::Unknown;
  std::optional<UnitWitness> witness;
  std::optional<NonUnitProof> proof;
};

UnitVerdict is_unit(const RingElement& e);

/// h with q*h = w, found by an ideal-membership lift; nullopt when none
/// is found (for integer presentations h must have integer coefficients).
std::optional<RingElement> divide(const RingElement& w, const RingElement& q);

/// Inverse of a unit; throws PreconditionError when is_unit is not True.
RingElement inverse(const RingElement& e);

bool replay(const UnitWitness& w);
bool replay(const NonUnitProof& p);

enum class SumClass { Unit, Nilpotent, Neither, Unknown };
std::string to_string(SumClass c);

struct SumCounterexample {
  UnitWitness u;
  UnitWitness v;
  RingElement sum;
  NonUnitProof sum_proof;
};

struct SumClassification {
  SumClass kind = SumClass::Unknown;
  RingElement sum;
  std::optional<UnitWitness> sum_witness;
  std::optional<SumCounterexample> counterexample;
};

/// Precondition: u and v are units (PreconditionError naming the offender).
SumClassification classify_unit_sum(const RingElement& u, const RingElement& v);

bool replay(const SumCounterexample& c);

/// A k-algebra map between affine presentations, given by the images of
/// the source variables. Coefficients embed by field_embeds.
class RingMap {
 public:
  RingMap(Ring source, Ring target, std::vector<RingElement> images);

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  const std::vector<RingElement>& images() const { return images_; }

  /// Relations map to zero and inverted elements to units.
  bool well_defined() const;
  RingElement operator()(const RingElement& e) const;
  RingElement apply(const Polynomial& f) const;

 private:
  Ring source_, target_;
  std::vector<RingElement> images_;
};

}  // namespace unital
