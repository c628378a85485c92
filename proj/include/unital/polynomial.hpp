#pragma once

// Sparse multivariate polynomials over a Scalar field with a fixed monomial
// order, plus substitution, weighted gradings, exact division and GCD.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unital/scalar.hpp"

namespace unital {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t arity, std::size_t index,
                           std::uint32_t power = 1);

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) in reverse, i.e. other | *this.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial pow(std::uint32_t n) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }
  std::size_t hash() const;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint64_t degree_ = 0;
};

enum class OrderKind { Lex, Grevlex, Block };

/// Lex, grevlex, or a two-block elimination order: variables [0, split)
/// compared by grevlex first, ties broken by grevlex on [split, n).
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  std::size_t split = 0;

  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder grevlex() { return {OrderKind::Grevlex, 0}; }
  static MonomialOrder block(std::size_t split) {
    return {OrderKind::Block, split};
  }

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  std::string name() const;
  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && split == o.split;
  }
};

/// Interned ambient ring: coefficient field, variable names and order.
class PolyRing {
 public:
  static const PolyRing* get(const FieldDesc* field,
                             const std::vector<std::string>& vars,
                             MonomialOrder order = MonomialOrder::grevlex());

  const FieldDesc* field() const { return field_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }
  /// -1 when absent.
  int index_of(const std::string& name) const;
  const PolyRing* with_order(MonomialOrder order) const;
  std::string to_string() const;

 private:
  PolyRing() = default;
  const FieldDesc* field_ = nullptr;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

struct Term {
  Monomial monomial;
  Scalar coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const PolyRing* ring) : ring_(ring) {}

  static Polynomial zero(const PolyRing* ring) { return Polynomial(ring); }
  static Polynomial constant(const PolyRing* ring, const Scalar& c);
  static Polynomial constant(const PolyRing* ring, long long c);
  static Polynomial variable(const PolyRing* ring, std::size_t index);
  static Polynomial variable(const PolyRing* ring, const std::string& name);
  static Polynomial monomial(const PolyRing* ring, const Monomial& m,
                             const Scalar& c);
  /// Builds a canonical polynomial from arbitrary (possibly repeated,
  /// unsorted, zero) terms.
  static Polynomial from_terms(const PolyRing* ring, std::vector<Term> terms);

  const PolyRing* ring() const { return ring_; }
  const FieldDesc* field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// The constant coefficient when is_constant() (zero for the zero poly).
  Scalar constant_value() const;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  /// Variables with a positive exponent somewhere in the support.
  std::vector<std::size_t> support_variables() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial& operator+=(const Polynomial& other) {
    return *this = *this + other;
  }
  Polynomial& operator-=(const Polynomial& other) {
    return *this = *this - other;
  }
  Polynomial& operator*=(const Polynomial& other) {
    return *this = *this * other;
  }
  Polynomial scale(const Scalar& c) const;
  Polynomial mul_term(const Monomial& m, const Scalar& c) const;
  /// this - c*m*g, the inner step of every reduction.
  Polynomial sub_mul_term(const Scalar& c, const Monomial& m,
                          const Polynomial& g) const;
  Polynomial pow(std::uint32_t n) const;
  /// Everything but the leading term.
  Polynomial tail() const;
  /// Divides by the leading coefficient. Zero stays zero.
  Polynomial monic() const;

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  /// Re-sorts the same polynomial into a ring with identical field and
  /// variables but possibly another order.
  Polynomial with_ring(const PolyRing* target) const;
  /// Moves into `target` by variable name; every variable in the support
  /// must exist in target and coefficients must embed into target's field.
  Polynomial rename_into(const PolyRing* target) const;

  /// Canonical compact text: descending order, "*" between factors,
  /// "^" for powers, e.g. "y^2-x*y-1".
  std::string to_string() const;
  std::size_t hash() const;

 private:
  const PolyRing* ring_ = nullptr;
  std::vector<Term> terms_;
};

/// Exact quotient a/b when b divides a, nullopt otherwise.
std::optional<Polynomial> divide_exact(const Polynomial& a,
                                       const Polynomial& b);

/// Monic greatest common divisor over a field of characteristic 0 or p
/// (prime-subfield coefficients only). gcd(0, 0) = 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Evaluates f at polynomial images (one per variable of f's ring), all
/// living in the same target ring. Coefficients of f are embedded into the
/// target's field.
Polynomial substitute(const Polynomial& f,
                      const std::vector<Polynomial>& images);

/// Evaluates f at scalar images in a field, typically a function field.
/// Throws DivisionByZero never (images are field elements).
Scalar substitute(const Polynomial& f, const std::vector<Scalar>& images);

/// Splits f into weighted-homogeneous components keyed by weighted degree.
/// Throws PreconditionError when weights.size() != number of variables.
std::map<long long, Polynomial> grading_decompose(
    const Polynomial& f, const std::vector<long long>& weights);
bool is_weighted_homogeneous(const Polynomial& f,
                             const std::vector<long long>& weights);

/// The univariate coefficient list of f in variable `var` (index = power),
/// each coefficient still a polynomial of f's ring not involving `var`.
std::vector<Polynomial> coefficients_in(const Polynomial& f, std::size_t var);

}  // namespace unital
