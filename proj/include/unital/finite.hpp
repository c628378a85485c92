#pragma once

// Small finite commutative rings given by full addition and multiplication
// tables, the corpus used as ground truth, and brute-force audits.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace unital {

using Elem = std::uint16_t;

class FiniteRing {
 public:
  /// Tables are row-major size*size. Element 0 must be the additive
  /// identity. Throws PreconditionError when a ring axiom fails.
  FiniteRing(std::string name, std::size_t size, std::vector<Elem> add,
             std::vector<Elem> mul);

  static std::shared_ptr<const FiniteRing> integers_mod(std::uint32_t n);
  /// Z/a x Z/b, encoded as a*j + i... see encode in the implementation.
  static std::shared_ptr<const FiniteRing> product(const FiniteRing& a,
                                                   const FiniteRing& b);
  /// Z/n[x]/(f) for monic f given by its non-leading coefficients
  /// (constant first), so deg f = coeffs.size().
  static std::shared_ptr<const FiniteRing> polynomial_quotient(
      std::uint32_t n, const std::vector<std::uint32_t>& coeffs);
  /// A (+) A/J with J the ideal generated by `j`.
  static std::shared_ptr<const FiniteRing> idealization(const FiniteRing& a, Elem j);
  /// R/I for an ideal given as a member bitmap.
  static std::shared_ptr<const FiniteRing> quotient(const FiniteRing& r,
                                                    const std::vector<bool>& ideal);

  const std::string& name() const { return name_; }
  std::size_t size() const { return size_; }
  Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * size_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem zero() const { return 0; }
  Elem one() const { return one_; }

  bool is_unit(Elem a) const { return inverse_[a] != kNone; }
  /// Multiplicative inverse; only for units.
  Elem inverse(Elem a) const { return inverse_[a]; }
  bool is_nilpotent(Elem a) const { return nilpotent_[a]; }
  const std::vector<Elem>& units() const { return units_; }
  const std::vector<Elem>& nilpotents() const { return nilpotent_list_; }

  /// Every u+v with u, v units is a unit or nilpotent.
  bool unit_additive() const;
  /// Nilradical is a prime ideal (equivalently: R is local here).
  bool nilradical_prime() const;
  std::string element_name(Elem a) const;

  /// Re-runs the cubic associativity and distributivity checks, which the
  /// built-in constructions skip.
  bool satisfies_axioms() const;

 private:
  static constexpr Elem kNone = 0xFFFF;
  struct Trusted {};
  FiniteRing(Trusted, std::string name, std::size_t size, std::vector<Elem> add,
             std::vector<Elem> mul);
  static std::shared_ptr<const FiniteRing> trusted(std::string name, std::size_t size,
                                                   std::vector<Elem> add,
                                                   std::vector<Elem> mul);
  void check_tables();
  /// Empty when the axioms hold, else the first failure.
  std::string axiom_failure() const;
  void derive();

  std::string name_;
  std::size_t size_;
  std::vector<Elem> add_, mul_, neg_, inverse_;
  std::vector<bool> nilpotent_;
  std::vector<Elem> units_, nilpotent_list_;
  Elem one_ = 0;
};

using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

// ------------------------------------------------------------------ audits

/// Ideals generated as sums of principal ideals, as member bitmaps, sorted
/// and deduplicated. Always includes (0) and R.
std::vector<std::vector<bool>> enumerate_ideals(const FiniteRing& r);
/// Subrings (additive subgroups containing 1, closed under product).
std::vector<std::vector<bool>> enumerate_subrings(const FiniteRing& r);
std::vector<bool> jacobson_radical(const FiniteRing& r);

struct EquivalenceReport {
  bool c1_unit_plus_one = false;
  bool c2_pairwise = false;
  bool c3_subring = false;
  bool c4_local_subring = false;
  bool c5_finite_sums = false;
  bool reduced = false;
  bool c6_field = false;  // only meaningful when reduced
  bool consistent() const;
};
EquivalenceReport audit_equivalences(const FiniteRing& r);

/// Throws PreconditionError unless ideal ⊆ nilradical.
bool audit_quotient_nil(const FiniteRing& r, const std::vector<bool>& ideal);
bool audit_idealization(const FiniteRing& a, Elem j);
/// phi: R -> R/I for each ideal I; phi^{-1}(U) equals the saturation of 1+I.
bool audit_saturation(const FiniteRing& r, const std::vector<bool>& ideal);
/// Random nonempty collections of UA subrings; their intersection is UA.
bool audit_intersection(const FiniteRing& s, std::size_t count, std::uint64_t seed);
/// For subrings R ⊆ S and ideals I of S inside R that are faithful over R:
/// S unit-additive implies R unit-additive.
bool audit_pullback(const FiniteRing& s);

struct CorpusEntry {
  FiniteRingPtr ring;
  std::string family;
};
/// The standard corpus in canonical order.
std::vector<CorpusEntry> standard_corpus();

struct AuditViolation {
  std::string ring;
  std::string audit;
  std::string detail;
};

struct CorpusReport {
  std::size_t rings = 0;
  std::size_t unit_additive = 0;
  std::size_t checks = 0;
  std::vector<AuditViolation> violations;
};

/// Runs every audit over the corpus on `threads` workers; the report is
/// independent of the thread count. Ring i is audited with seed + i; with
/// `stride` > 1 only the indices divisible by it are audited.
CorpusReport audit_corpus(const std::vector<CorpusEntry>& corpus, unsigned threads,
                          std::uint64_t seed, std::size_t stride = 1);

}  // namespace unital
