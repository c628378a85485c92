#pragma once

// The chain rings k[y1..yn][1/f1] with f_n = y_n and f_j = y_j f_{j+1} - 1,
// and the explicit isomorphism with k[x1, 1/x1, x2, (1+x1)/x2, ...].

#include <string>
#include <vector>

#include "unital/ring.hpp"

namespace unital {

/// Inverted set {f1}; aux elements f1..fn named "f1".."fn". Description
/// "chain(k,n)".
Ring chain_ring(std::uint32_t n, const FieldDesc* field);

struct IdentityCheck {
  std::string lhs;  // e.g. "psi(nu(x2))"
  std::string value;
  std::string expected;
  bool holds = false;
};

struct ChainIsoReport {
  std::uint32_t n = 0;
  /// Images of psi: y_j -> (1+x_j)/x_{j+1}, y_n -> x_n.
  std::vector<std::string> psi;
  /// Images of nu: x_j -> f_j.
  std::vector<std::string> nu;
  std::vector<IdentityCheck> checks;
  bool all_hold() const;
};

/// The generator x_j of the x-side ring lives in
/// k(x1..xn) as a rational function; both round trips are checked there
/// and in the presented chain ring. Throws Error if an identity fails.
ChainIsoReport chain_iso(std::uint32_t n, const FieldDesc* field);

}  // namespace unital
