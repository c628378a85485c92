#pragma once

// JSON certificates. Every document carries the tool version, its kind, the
// ring description and the prime-asserted flag, so it can be replayed on its
// own. Keys are emitted in a fixed order and elements in canonical form, so
// equal results serialize to equal bytes.

#include <json.hpp>

#include "unital/chain.hpp"
#include "unital/decide.hpp"
#include "unital/finite.hpp"
#include "unital/tower.hpp"

namespace unital {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "unital 1.0.0";

Json to_json(const Verdict& v);
Json to_json(const RingElement& e, const UnitVerdict& v);
Json to_json(const SumClassification& c, const RingElement& u, const RingElement& v);
Json to_json(const UdimResult& r);
Json to_json(const Closure& c);
Json to_json(const TorusMap& m);
Json to_json(const ChainIsoReport& r, const FieldDesc* field);
/// `families` is the corpus filter (empty: the whole standard corpus);
/// `sample_stride` records which corpus indices a replay re-audits.
Json to_json(const CorpusReport& r, std::uint64_t seed, std::size_t sample_stride,
             const std::vector<std::string>& families = {});

/// The standard corpus restricted to the given families (all when empty).
/// Throws PreconditionError on an unknown family.
std::vector<CorpusEntry> corpus_of(const std::vector<std::string>& families);

/// {"order", "basis"}: the reduced Gröbner basis of an affine ring's
/// defining ideal in the given order. Null for other ring kinds. A
/// document may carry it under "groebner"; replay recomputes it.
Json groebner_json(const Ring& ring, const MonomialOrder& order);

/// Rebuilds the certificate from its JSON and re-checks it. Throws
/// ParseError on malformed documents.
bool replay_json(const Json& doc);

/// {"embedding": {var: polynomial}, "weights": [int]}, both optional.
Hints hints_from_json(const Json& doc);

}  // namespace unital
