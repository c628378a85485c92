#pragma once

// Three-valued unit-additivity verdicts. Rules are tried in a fixed order:
// field, polynomial ring, positive grading, embedding into a polynomial
// ring, bounded counterexample search, and finally Unknown.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unital/ring.hpp"

namespace unital {

struct SearchBounds {
  /// Summands per candidate polynomial and per unit sum.
  std::uint32_t max_summands = 2;
  std::uint32_t max_degree = 2;
  /// Rational coefficient pool; over F_p every nonzero residue is used.
  std::vector<long long> pool = {-2, -1, 1, 2};
  std::size_t max_candidates = 5000;
  std::uint64_t seed = 0;
  /// Skip the certificate rules and run the search only.
  bool search_only = false;

  /// Throws PreconditionError unless every bound is positive.
  void validate() const;
};

struct FieldCert {
  std::string reason;  // "no variables", "zero-dimensional", "finite field"
};

struct PolynomialCert {};

struct GradingCert {
  std::vector<long long> weights;
  std::vector<long long> relation_degrees;
};

struct EmbeddingHint {
  /// source variable -> polynomial in the target variables
  std::map<std::string, std::string> images;
};

struct EmbeddingCert {
  EmbeddingHint hint;
  std::string target;  // description of k[t...]
  std::vector<std::string> relation_images;  // each "0"
  std::vector<std::string> inverted_images;  // nonzero scalars
  std::vector<std::string> kernel;           // kernel generators, all in P
};

/// Z_(p): j = p lies in the Jacobson radical and is the sum of the units
/// 1+p and -1.
struct JacobsonCert {
  std::uint32_t prime = 0;
  SumCounterexample pair;
  std::vector<std::string> trace;
};

struct ExhaustiveCert {
  std::size_t units = 0;
  std::size_t pairs = 0;
};

using Certificate = std::variant<std::monostate, FieldCert, PolynomialCert, GradingCert,
                                 EmbeddingCert, SumCounterexample, JacobsonCert,
                                 ExhaustiveCert>;

struct Hints {
  std::optional<EmbeddingHint> embedding;
  std::optional<std::vector<long long>> weights;
};

struct Verdict {
  Truth value = Truth::Unknown;
  std::string rule;  // "field", "polynomial", "grading", "embedding", "search", ...
  Ring ring;
  SearchBounds bounds;
  Certificate certificate;
  std::vector<std::string> notes;
  std::size_t candidates = 0;
  std::size_t units = 0;
};

Verdict check_unit_additive(const Ring& ring, const SearchBounds& bounds = {},
                            const Hints& hints = {});

/// Re-derives the verdict's certificate from scratch. Unknown verdicts
/// replay trivially.
bool replay(const Verdict& v);

/// Throws HintRejected with the failing check.
EmbeddingCert check_embedding(const Ring& ring, const EmbeddingHint& hint);
GradingCert check_grading(const Ring& ring, const std::vector<long long>& weights);

struct TorusMap {
  Ring source;  // k[t][1/t]
  Ring target;
  RingElement unit;
  std::string image;  // t -> image
  /// Kernel of k[t] -> target; empty means injective.
  std::vector<Polynomial> kernel;
  Truth injective = Truth::Unknown;
  /// t maps to a unit, and t * t^{-1} - 1 maps to 0.
  bool relation_checks = false;
};

/// Precondition: u is a unit of an affine presentation over a field.
TorusMap build_torus_map(const Ring& ring, const RingElement& u);

}  // namespace unital
