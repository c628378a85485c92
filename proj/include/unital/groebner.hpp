#pragma once

// Buchberger's algorithm and the ideal-theoretic primitives built on it:
// normal forms, membership, radical membership, cofactor lifts, elimination
// and kernels of algebra maps.

#include <optional>
#include <string>
#include <vector>

#include "unital/parse.hpp"
#include "unital/polynomial.hpp"

namespace unital {

/// Process-wide ceiling on the number of terms held by a single Gröbner
/// computation; exceeding it throws ResourceError. Default 10^6.
void set_monomial_ceiling(std::size_t ceiling);
std::size_t monomial_ceiling();

class GroebnerBasis {
 public:
  /// Reduced Gröbner basis of the ideal generated by `gens` in `ring`
  /// (generators are re-sorted into ring's order). Deterministic.
  static GroebnerBasis compute(const std::vector<Polynomial>& gens,
                               const PolyRing* ring);

  const PolyRing* ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  /// Monic, auto-reduced, sorted by increasing leading monomial.
  const std::vector<Polynomial>& basis() const { return basis_; }

  bool is_unit_ideal() const;
  bool is_zero_ideal() const { return basis_.empty(); }
  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const;

  /// Is every variable's pure power a leading monomial (finitely many
  /// standard monomials)? The unit ideal counts.
  bool is_zero_dimensional() const;

  /// Post-construction audit: every S-polynomial and every input generator
  /// reduces to zero, and no leading monomial divides another.
  bool verify() const;

  std::size_t total_terms() const;

 private:
  const PolyRing* ring_ = nullptr;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> basis_;
};

/// Full reduction of f by the polynomials in `by` (any order of `by`).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& by);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

bool ideal_member(const Polynomial& f, const GroebnerBasis& ideal);

/// f in sqrt(I) via 1 in I + (1 - z*f) over one fresh variable.
bool radical_member(const Polynomial& f, const std::vector<Polynomial>& gens);
bool radical_member(const Polynomial& f, const GroebnerBasis& ideal);

/// A fresh name "#auxN" unused by ring.
std::string fresh_variable(const PolyRing* ring);

/// Cofactors c with f = sum c_i * gens_i, or nullopt when f is not in the
/// ideal. Computed by a Buchberger run that tracks representations.
std::optional<std::vector<Polynomial>> lift(const Polynomial& f,
                                            const std::vector<Polynomial>& gens);

/// (gens) ∩ target, where target's variables are a subset of the variables
/// of the gens' ring. Returns the reduced basis in target.
std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens,
                                  const PolyRing* target);

/// Kernel of source -> K[X]/P[1/d], s_i -> images[i] (num/den, each den a
/// unit of the target). Images, relations and d live in one ring over the
/// same field as source. Returns the reduced kernel basis in source.
std::vector<Polynomial> map_kernel(const PolyRing* source,
                                   const std::vector<PolyFraction>& images,
                                   const std::vector<Polynomial>& relations,
                                   const Polynomial& inverted);

/// A ring with the union of the variables (first list first) and grevlex.
const PolyRing* union_ring(const FieldDesc* field,
                           const std::vector<std::string>& first,
                           const std::vector<std::string>& second);

}  // namespace unital
