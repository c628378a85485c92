#pragma once

// The W_i/V_i tower of a presented domain. Level i is the localization
// W_i^{-1}R, re-presented as an affine ring (possibly over a larger field of
// rational functions). Members of W_i and V_i are recorded as elements of the
// base ring R; each level keeps the images of R's variables so any base
// element can be pushed up.

#include <optional>
#include <string>
#include <vector>

#include "unital/decide.hpp"
#include "unital/ring.hpp"

namespace unital {

struct TowerOptions {
  SearchBounds search;
  std::uint32_t levels = 8;
  /// Caps for the W-seeds: sums of at most this many monoid words ...
  std::uint32_t sum_summands = 3;
  /// ... each of degree at most this.
  std::uint32_t word_degree = 6;
  std::size_t max_seeds = 24;
  /// Used for the level-0 verdict only.
  Hints hints;

  void validate() const;
};

/// A sum of units of the previous level, recorded in the base ring.
struct SumMember {
  RingElement value;
  std::vector<RingElement> summands;
};

/// divisor * cofactor = target, all in the base ring; target is in W_i, so
/// divisor and cofactor are in V_i.
struct DivisionWitness {
  RingElement divisor;
  RingElement cofactor;
  RingElement target;
};

/// Every nonzero polynomial in the generator became invertible; the new
/// field generator `name` is its image.
struct GrowthFact {
  std::string name;
  RingElement generator;  // base element
};

struct TowerLevel {
  std::uint32_t index = 0;
  Ring ring;
  /// Images of the base ring's variables in `ring`.
  std::vector<RingElement> base_images;
  /// Base elements that are non-scalar units here: monoid generators of V_i.
  std::vector<RingElement> generators;
  std::vector<SumMember> w_members;
  std::vector<DivisionWitness> divisions;
  std::vector<GrowthFact> growth;
  /// Variables removed by solving a*v = b with a a unit, as "v = b/a".
  std::vector<std::string> eliminations;
  Verdict verdict;
};

struct TowerState {
  Ring base;
  std::vector<TowerLevel> levels;
  /// Base elements found by trial division, available as divisors and
  /// generators at later levels.
  std::vector<RingElement> discovered;
  /// The last step produced no new level.
  bool stalled = false;
};

/// Level 0: the base ring with its units and verdict.
TowerState tower_start(const Ring& ring, const TowerOptions& options = {});
/// Appends level i+1, or sets `stalled` when nothing grows.
TowerState tower_step(const TowerState& state, const TowerOptions& options = {});

/// Pushes a base element to a level.
RingElement to_level(const TowerState& state, std::size_t level, const RingElement& base);

struct UdimResult {
  /// True when `value` is exact.
  Truth exact = Truth::Unknown;
  std::optional<std::uint32_t> value;
  std::uint32_t lower = 0;
  std::optional<std::uint32_t> upper;
  TowerState tower;
  /// Set when a resource ceiling stopped the tower.
  std::string note;
};

/// Throws PreconditionError for finite rings that are not local.
UdimResult udim(const Ring& ring, const TowerOptions& options = {});

struct Closure {
  Truth status = Truth::Unknown;
  /// The top level's ring; the last computed level when Unknown.
  Ring ring;
  bool fraction_field = false;
  UdimResult udim;
};

Closure ua_closure(const Ring& ring, const TowerOptions& options = {});

/// Re-checks every witness of the tower and every level verdict.
bool replay(const TowerState& state);

struct MonotonicityReport {
  std::uint32_t levels = 0;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  /// The target has level-0 unit generators beyond the images of the
  /// source's.
  bool extra_target_units = false;
  UdimResult source, target;
  /// Only meaningful for polynomial extensions.
  bool udim_agree = false;

  bool ok() const { return failures.empty(); }
};

/// Members of W_i(A) and V_i(A) must map to units of W_i(B)^{-1}B.
/// Throws PreconditionError unless the map is well defined.
MonotonicityReport monotonicity_audit(const Ring& a, const Ring& b,
                                      const std::vector<RingElement>& images,
                                      std::uint32_t levels,
                                      bool polynomial_extension = false,
                                      const TowerOptions& options = {});

}  // namespace unital
