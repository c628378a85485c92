#pragma once

// Exact coefficient fields: the rationals, prime fields F_p (p < 2^31) and
// flattened rational-function fields over either of them.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace unital {

class Polynomial;
class PolyRing;

enum class FieldKind { Rational, Prime, Function };

/// Interned description of a coefficient field. Two fields are equal exactly
/// when their descriptor pointers are equal.
class FieldDesc {
 public:
  FieldKind kind() const { return kind_; }
  /// 0 for characteristic zero, otherwise the prime.
  std::uint32_t characteristic() const { return characteristic_; }
  /// The prime field (Q or F_p) underneath a function field; self otherwise.
  const FieldDesc* prime_subfield() const { return base_ ? base_ : this; }
  /// Transcendental generators of a function field, in order.
  const std::vector<std::string>& variables() const { return vars_; }
  /// Polynomial ring prime_subfield()[variables()] (grevlex) holding the
  /// numerators and denominators of function-field elements.
  const PolyRing* fraction_ring() const { return fraction_ring_; }
  /// Canonical text, e.g. "Q", "F_5", "Q(x1,x2)".
  const std::string& to_string() const { return name_; }

  bool is_function_field() const { return kind_ == FieldKind::Function; }
  int variable_index(const std::string& name) const;

 private:
  friend const FieldDesc* rational_field();
  friend const FieldDesc* prime_field(std::uint32_t);
  friend const FieldDesc* extend_by_fractions(const FieldDesc*,
                                              const std::vector<std::string>&);
  FieldDesc() = default;

  FieldKind kind_ = FieldKind::Rational;
  std::uint32_t characteristic_ = 0;
  const FieldDesc* base_ = nullptr;
  std::vector<std::string> vars_;
  const PolyRing* fraction_ring_ = nullptr;
  std::string name_;
};

const FieldDesc* rational_field();

/// Throws PreconditionError unless p is a prime below 2^31.
const FieldDesc* prime_field(std::uint32_t p);

/// base(vars). Towers are flattened: extending k(x1) by x2 yields k(x1,x2).
/// Throws PreconditionError on an empty list or a name collision.
const FieldDesc* extend_by_fractions(const FieldDesc* base,
                                     const std::vector<std::string>& vars);

bool is_prime_u32(std::uint64_t n);

/// An immutable element of a FieldDesc, always kept in canonical form:
/// rationals in lowest terms, residues in [0, p), rational functions with
/// coprime numerator and denominator whose grevlex leading coefficient is 1.
class Scalar {
 public:
  Scalar();  // rational zero

  static Scalar zero(const FieldDesc* field);
  static Scalar one(const FieldDesc* field);
  static Scalar from_int(const FieldDesc* field, long long value);
  static Scalar from_integer(const FieldDesc* field, const mpz_class& value);
  /// Throws DivisionByZero when the denominator vanishes in F_p.
  static Scalar from_rational(const FieldDesc* field, const mpq_class& value);
  /// num/den over field->fraction_ring(); den must be nonzero.
  static Scalar from_fraction(const FieldDesc* field, const Polynomial& num,
                              const Polynomial& den);
  /// The i-th generator of a function field.
  static Scalar generator(const FieldDesc* field, std::size_t index);

  const FieldDesc* field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in the prime subfield (Q or F_p).
  bool is_prime_constant() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  Scalar operator/(const Scalar& other) const;
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }
  Scalar inverse() const;
  Scalar pow(long long exponent) const;

  bool operator==(const Scalar& other) const;
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  const mpq_class& rational() const;
  std::uint32_t residue() const;
  const Polynomial& numerator() const;
  const Polynomial& denominator() const;
  /// The prime-subfield constant when is_prime_constant().
  Scalar prime_constant() const;

  /// Canonical text. Rationals print as "-3/4", residues as their integer
  /// representative, rational functions as "(num)/(den)" or "(num)".
  std::string to_string() const;
  /// Is the printed form a single signed atom that needs no parentheses
  /// when used as a coefficient?
  bool prints_atomic() const;
  /// Sign used by printers: -1 when the canonical form starts with a minus.
  int print_sign() const;
  std::size_t hash() const;

 private:
  struct Fraction {
    std::shared_ptr<const Polynomial> num;
    std::shared_ptr<const Polynomial> den;
  };
  Scalar(const FieldDesc* field, mpq_class value);
  Scalar(const FieldDesc* field, std::uint32_t value);
  Scalar(const FieldDesc* field, Fraction value);

  void require_same_field(const Scalar& other) const;
  static Scalar make_function(const FieldDesc* field, Polynomial num,
                              Polynomial den, bool reduce);

  const FieldDesc* field_;
  std::variant<mpq_class, std::uint32_t, Fraction> value_;
};

/// Maps a scalar into a larger field: prime subfield into any field with the
/// same characteristic, or a function field into one whose generators
/// include all of its own (matched by name). Throws DomainError otherwise.
Scalar embed_scalar(const Scalar& value, const FieldDesc* target);

/// Can every element of `from` be embedded into `to`?
bool field_embeds(const FieldDesc* from, const FieldDesc* to);

}  // namespace unital
