#include "unital/decide.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <unordered_map>

#include "unital/error.hpp"
#include "unital/parse.hpp"

namespace unital {

void SearchBounds::validate() const {
  if (max_summands == 0 || max_degree == 0 || max_candidates == 0 || pool.empty()) {
    throw PreconditionError("search bounds must be positive and the pool nonempty");
  }
  for (long long c : pool) {
    if (c == 0) throw PreconditionError("coefficient pool must not contain 0");
  }
}

namespace {

// ---------------------------------------------------------------- rules R3/R4

bool is_field_affine(const Ring& r) {
  return r->kind() == RingKind::Affine && !r->integer_coefficients();
}

}  // namespace

GradingCert check_grading(const Ring& ring, const std::vector<long long>& weights) {
  if (!is_field_affine(ring)) throw HintRejected("grading needs a presentation over a field");
  const PolyRing* pr = ring->poly_ring();
  if (weights.size() != pr->arity()) {
    throw HintRejected("expected " + std::to_string(pr->arity()) + " weights, got " +
                       std::to_string(weights.size()));
  }
  for (long long w : weights) {
    if (w <= 0) throw HintRejected("weights must be positive");
  }
  GradingCert cert;
  cert.weights = weights;
  for (const auto& r : ring->input_relations()) {
    if (r.is_zero()) continue;
    if (!is_weighted_homogeneous(r, weights)) {
      throw HintRejected("relation " + r.to_string() + " is not weighted-homogeneous");
    }
    cert.relation_degrees.push_back(grading_decompose(r, weights).begin()->first);
  }
  for (const auto& d : ring->inverted()) {
    if (!d.is_constant()) {
      throw HintRejected("inverted element " + d.to_string() + " is not of degree 0");
    }
  }
  return cert;
}

EmbeddingCert check_embedding(const Ring& ring, const EmbeddingHint& hint) {
  if (!is_field_affine(ring)) throw HintRejected("embedding needs a presentation over a field");
  const PolyRing* pr = ring->poly_ring();
  const FieldDesc* field = pr->field();
  std::vector<std::string> tvars;
  for (const auto& v : pr->variables()) {
    auto it = hint.images.find(v);
    if (it == hint.images.end()) throw HintRejected("no image for variable " + v);
    std::vector<Token> tokens;
    try {
      tokens = tokenize(it->second);
    } catch (const ParseError& e) {
      throw HintRejected("image of " + v + ": " + e.what());
    }
    for (const auto& t : tokens) {
      if (t.kind == TokenKind::Identifier && field->variable_index(t.text) < 0 &&
          std::find(tvars.begin(), tvars.end(), t.text) == tvars.end()) {
        tvars.push_back(t.text);
      }
    }
  }
  for (const auto& [v, img] : hint.images) {
    if (pr->index_of(v) < 0) throw HintRejected("image given for unknown variable " + v);
  }
  const PolyRing* target = PolyRing::get(field, tvars);
  std::vector<Polynomial> images;
  for (const auto& v : pr->variables()) {
    try {
      images.push_back(parse_polynomial(hint.images.at(v), target));
    } catch (const Error& e) {
      throw HintRejected("image of " + v + ": " + e.what());
    }
  }
  EmbeddingCert cert;
  cert.hint = hint;
  AffineSpec tspec;
  tspec.ring = target;
  cert.target = RingPresentation::affine(tspec)->description();
  for (const auto& r : ring->input_relations()) {
    Polynomial s = substitute(r, images);
    if (!s.is_zero()) {
      throw HintRejected("relation " + r.to_string() + " maps to " + s.to_string() + ", not 0");
    }
    cert.relation_images.push_back(s.to_string());
  }
  for (const auto& d : ring->inverted()) {
    Polynomial s = substitute(d, images);
    if (s.is_zero() || !s.is_constant()) {
      throw HintRejected("inverted element " + d.to_string() + " maps to " + s.to_string() +
                         ", not a nonzero scalar");
    }
    cert.inverted_images.push_back(s.to_string());
  }
  std::vector<PolyFraction> fr;
  for (const auto& im : images) fr.push_back({im, Polynomial::constant(target, 1)});
  for (const auto& k : map_kernel(pr, fr, {}, Polynomial::constant(target, 1))) {
    if (!ring->ideal().contains(k)) {
      throw HintRejected("map is not injective: " + k.to_string() + " is in the kernel");
    }
    cert.kernel.push_back(k.to_string());
  }
  return cert;
}

namespace {

// ------------------------------------------------------------------ search

std::vector<long long> coefficient_pool(const Ring& ring, const SearchBounds& b) {
  std::vector<long long> pool;
  if (ring->kind() == RingKind::Affine && ring->field()->characteristic() != 0) {
    long long p = ring->field()->characteristic();
    for (long long c = 1; c <= p / 2; ++c) {
      pool.push_back(c);
      if (p - c != c) pool.push_back(-c);
    }
    if (p == 2) pool = {1};
  } else {
    pool = b.pool;
    std::stable_sort(pool.begin(), pool.end(), [](long long a, long long c) {
      return std::make_pair(std::llabs(a), a < 0) < std::make_pair(std::llabs(c), c < 0);
    });
  }
  return pool;
}

std::vector<Monomial> monomials(const PolyRing* r, std::uint32_t max_degree) {
  std::vector<Monomial> out;
  const std::size_t n = r->arity();
  std::vector<std::uint32_t> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i == n) {
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return r->order().compare(a, b) > 0;
  });
  return out;
}

class Search {
 public:
  Search(const Ring& ring, const SearchBounds& b) : ring_(ring), b_(b) {}

  std::vector<RingElement> candidates() {
    std::vector<RingElement> out;
    std::set<std::string> seen;
    auto add = [&](const RingElement& e) {
      if (e.is_zero() || out.size() >= b_.max_candidates) return;
      if (seen.insert(e.to_string()).second) out.push_back(e);
    };
    auto pool = coefficient_pool(ring_, b_);
    for (long long c : pool) add(RingElement::from_int(ring_, c));
    if (ring_->kind() != RingKind::Affine) return out;
    for (std::size_t j = 0; j < ring_->inverted().size(); ++j) {
      if (ring_->inverted()[j].is_constant() && !ring_->integer_coefficients()) continue;
      add(RingElement::from_polynomial(ring_, ring_->inverted()[j]));
      add(RingElement::inverse_of_inverted(ring_, j));
    }
    const PolyRing* pr = ring_->poly_ring();
    auto monos = monomials(pr, b_.max_degree);
    for (std::uint32_t deg = 1; deg <= b_.max_degree; ++deg) {
      for (std::uint32_t k = 1; k <= b_.max_summands; ++k) {
        std::vector<RingElement> block;
        std::vector<std::size_t> pick;
        auto rec = [&](auto&& self, std::size_t start) -> void {
          if (pick.size() == k) {
            if (monos[pick.back()].degree() != deg) return;
            std::vector<std::size_t> ci(k, 0);
            while (true) {
              std::vector<Term> terms;
              for (std::size_t t = 0; t < k; ++t) {
                terms.push_back({monos[pick[t]], Scalar::from_int(pr->field(), pool[ci[t]])});
              }
              block.push_back(
                  RingElement::from_polynomial(ring_, Polynomial::from_terms(pr, terms)));
              std::size_t t = k;
              while (t > 0 && ++ci[t - 1] == pool.size()) ci[--t] = 0;
              if (t == 0) break;
            }
            return;
          }
          for (std::size_t i = start; i < monos.size() && monos[i].degree() <= deg; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
            if (block.size() > 4 * b_.max_candidates) return;
          }
        };
        rec(rec, 0);
        if (out.size() + block.size() > b_.max_candidates) {
          // Truncation: the seed decides which members of this block survive.
          std::mt19937_64 rng(b_.seed);
          std::shuffle(block.begin(), block.end(), rng);
        }
        for (const auto& e : block) add(e);
        if (out.size() >= b_.max_candidates) return sorted(out);
      }
    }
    return sorted(out);
  }

  Truth unit(const RingElement& e) {
    std::string key = unit_key(e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Truth t = is_unit(e).truth;
    cache_.emplace(key, t);
    return t;
  }

 private:
  static std::vector<RingElement> sorted(std::vector<RingElement> v) {
    std::stable_sort(v.begin(), v.end(), [](const RingElement& a, const RingElement& b) {
      return std::make_pair(a.degree(), a.term_count()) <
             std::make_pair(b.degree(), b.term_count());
    });
    return v;
  }

  std::string unit_key(const RingElement& e) const {
    if (ring_->kind() != RingKind::Affine || ring_->integer_coefficients()) return e.to_string();
    Polynomial m = e.numerator().monic();
    std::string k = m.to_string();
    for (auto a : e.den_exponents()) k += "|" + std::to_string(a);
    return k;
  }

  Ring ring_;
  SearchBounds b_;
  std::unordered_map<std::string, Truth> cache_;
};

struct PairKey {
  std::uint64_t degree;
  std::size_t terms, negatives, length, i, j;
  auto tie() const { return std::tie(degree, terms, negatives, length, i, j); }
  bool operator<(const PairKey& o) const { return tie() < o.tie(); }
};

Verdict run_search(const Ring& ring, const SearchBounds& b, Verdict v) {
  Search search(ring, b);
  std::vector<RingElement> cands = search.candidates();
  std::vector<RingElement> units;
  for (const auto& c : cands) {
    if (search.unit(c) == Truth::True) units.push_back(c);
  }
  v.candidates = cands.size();
  v.units = units.size();
  std::set<std::string> known;
  for (const auto& u : units) known.insert(u.to_string());

  std::size_t fresh_begin = 0;
  for (std::uint32_t round = 1; round < std::max<std::uint32_t>(2, b.max_summands); ++round) {
    struct Pair {
      PairKey key;
      std::size_t a, c;
      RingElement sum;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = fresh_begin; a < units.size(); ++a) {
      for (std::size_t c = 0; c <= a; ++c) {
        if (c >= fresh_begin && c > a) continue;
        RingElement s = units[a] + units[c];
        if (is_nilpotent(s)) continue;
        std::string text = s.to_string();
        PairKey k{s.degree(), s.term_count(),
                  static_cast<std::size_t>(std::count(text.begin(), text.end(), '-')),
                  text.size(), c, a};
        pairs.push_back({k, a, c, std::move(s)});
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& x, const Pair& y) { return x.key < y.key; });
    std::vector<RingElement> new_units;
    for (const auto& p : pairs) {
      Truth t = search.unit(p.sum);
      if (t == Truth::False) {
        RingElement u = units[p.a], w = units[p.c];
        auto rank = [](const RingElement& e) {
          return std::make_pair(-static_cast<long long>(e.degree()), e.term_count());
        };
        if (rank(w) < rank(u)) std::swap(u, w);
        SumClassification cls = classify_unit_sum(u, w);
        if (cls.kind != SumClass::Neither) throw Error("search: inconsistent classification");
        v.value = Truth::False;
        v.rule = "search";
        v.certificate = *cls.counterexample;
        return v;
      }
      if (t == Truth::True && new_units.size() < b.max_candidates &&
          known.insert(p.sum.to_string()).second) {
        new_units.push_back(p.sum);
      }
    }
    if (new_units.empty()) break;
    fresh_begin = units.size();
    for (auto& n : new_units) units.push_back(std::move(n));
  }
  v.value = Truth::Unknown;
  v.rule = "bounds exhausted";
  return v;
}

Verdict exhaustive(const Ring& ring, Verdict v) {
  const FiniteRing& t = ring->table();
  ExhaustiveCert cert;
  cert.units = t.units().size();
  for (Elem u : t.units()) {
    for (Elem w : t.units()) {
      if (w < u) continue;
      ++cert.pairs;
      Elem s = t.add(u, w);
      if (!t.is_unit(s) && !t.is_nilpotent(s)) {
        auto cls = classify_unit_sum(RingElement::from_index(ring, u),
                                     RingElement::from_index(ring, w));
        v.value = Truth::False;
        v.rule = "exhaustive";
        v.certificate = *cls.counterexample;
        return v;
      }
    }
  }
  v.value = Truth::True;
  v.rule = "exhaustive";
  v.certificate = cert;
  return v;
}

JacobsonCert jacobson(const Ring& ring) {
  const std::uint32_t p = ring->prime();
  JacobsonCert cert;
  cert.prime = p;
  RingElement u = RingElement::from_int(ring, 1 + static_cast<long long>(p));
  RingElement w = RingElement::from_int(ring, -1);
  auto cls = classify_unit_sum(u, w);
  if (cls.kind != SumClass::Neither) throw Error("Z_(p): unexpected classification");
  cert.pair = *cls.counterexample;
  std::string ps = std::to_string(p);
  cert.trace = {
      "j = " + ps,
      "for r = a/b with p not dividing b: 1 + j*r = (b + " + ps + "*a)/b",
      "b + " + ps + "*a = b mod " + ps + " is nonzero, so 1 + j*r is a unit",
      "hence j lies in the Jacobson radical; j is nonzero, so not nilpotent",
      "j = (1 + " + ps + ") + (-1) is a sum of units that is neither a unit nor nilpotent",
  };
  return cert;
}

bool finite_field(const FiniteRing& t) { return t.units().size() + 1 == t.size(); }

}  // namespace

Verdict check_unit_additive(const Ring& ring, const SearchBounds& bounds, const Hints& hints) {
  bounds.validate();
  Verdict v;
  v.ring = ring;
  v.bounds = bounds;
  switch (ring->kind()) {
    case RingKind::Finite:
      if (!bounds.search_only && finite_field(ring->table())) {
        v.value = Truth::True;
        v.rule = "field";
        v.certificate = FieldCert{"finite field"};
        return v;
      }
      return exhaustive(ring, std::move(v));
    case RingKind::LocalIntegers:
      v.value = Truth::False;
      v.rule = "jacobson";
      v.certificate = jacobson(ring);
      return v;
    case RingKind::Integers: return run_search(ring, bounds, std::move(v));
    case RingKind::Affine: break;
  }
  if (!bounds.search_only && !ring->integer_coefficients()) {
    if (ring->poly_ring()->arity() == 0) {
      v.value = Truth::True;
      v.rule = "field";
      v.certificate = FieldCert{"no variables"};
      return v;
    }
    if (ring->ideal().is_zero_dimensional()) {
      v.value = Truth::True;
      v.rule = "field";
      v.certificate = FieldCert{"zero-dimensional"};
      return v;
    }
    if (ring->is_polynomial_ring()) {
      v.value = Truth::True;
      v.rule = "polynomial";
      v.certificate = PolynomialCert{};
      return v;
    }
    if (hints.weights) {
      try {
        v.certificate = check_grading(ring, *hints.weights);
        v.value = Truth::True;
        v.rule = "grading";
        return v;
      } catch (const HintRejected& e) {
        v.notes.push_back(std::string("grading hint rejected: ") + e.what());
      }
    }
    if (hints.embedding) {
      try {
        v.certificate = check_embedding(ring, *hints.embedding);
        v.value = Truth::True;
        v.rule = "embedding";
        return v;
      } catch (const HintRejected& e) {
        v.notes.push_back(std::string("embedding hint rejected: ") + e.what());
      }
    }
  }
  return run_search(ring, bounds, std::move(v));
}

bool replay(const Verdict& v) {
  const Ring& ring = v.ring;
  if (!ring) return false;
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return v.value == Truth::Unknown;
        } else if constexpr (std::is_same_v<T, FieldCert>) {
          if (v.value != Truth::True) return false;
          if (c.reason == "finite field") {
            return ring->kind() == RingKind::Finite && finite_field(ring->table());
          }
          if (!is_field_affine(ring)) return false;
          if (c.reason == "no variables") return ring->poly_ring()->arity() == 0;
          if (c.reason == "zero-dimensional") {
            return GroebnerBasis::compute(ring->input_relations(), ring->poly_ring())
                .is_zero_dimensional();
          }
          return false;
        } else if constexpr (std::is_same_v<T, PolynomialCert>) {
          return v.value == Truth::True && ring->is_polynomial_ring();
        } else if constexpr (std::is_same_v<T, GradingCert>) {
          try {
            return v.value == Truth::True &&
                   check_grading(ring, c.weights).relation_degrees == c.relation_degrees;
          } catch (const HintRejected&) {
            return false;
          }
        } else if constexpr (std::is_same_v<T, EmbeddingCert>) {
          try {
            EmbeddingCert again = check_embedding(ring, c.hint);
            return v.value == Truth::True && again.kernel == c.kernel &&
                   again.relation_images == c.relation_images;
          } catch (const HintRejected&) {
            return false;
          }
        } else if constexpr (std::is_same_v<T, SumCounterexample>) {
          return v.value == Truth::False && c.u.unit.ring() == ring && replay(c);
        } else if constexpr (std::is_same_v<T, JacobsonCert>) {
          return v.value == Truth::False && ring->kind() == RingKind::LocalIntegers &&
                 c.prime == ring->prime() && replay(c.pair) &&
                 c.pair.sum == RingElement::from_int(ring, c.prime);
        } else {
          return v.value == Truth::True && ring->kind() == RingKind::Finite &&
                 ring->table().unit_additive();
        }
      },
      v.certificate);
}

TorusMap build_torus_map(const Ring& ring, const RingElement& u) {
  if (!is_field_affine(ring)) {
    throw PreconditionError("torus maps need an affine presentation over a field");
  }
  if (u.ring() != ring) throw DomainError("element of another ring");
  if (is_unit(u).truth != Truth::True) {
    throw PreconditionError(u.to_string() + " is not a unit of " + ring->description());
  }
  TorusMap m;
  AffineSpec spec;
  spec.ring = PolyRing::get(ring->field(), {"t"});
  spec.inverted = {Polynomial::variable(spec.ring, 0)};
  m.source = RingPresentation::affine(spec);
  m.target = ring;
  m.unit = u;
  m.image = u.to_string();
  m.kernel = map_kernel(spec.ring, {PolyFraction{u.numerator(), u.denominator()}},
                        ring->ideal().basis(), ring->inverted_product());
  m.injective = m.kernel.empty() ? Truth::True : Truth::False;
  RingMap phi(m.source, ring, {u});
  m.relation_checks = phi.well_defined() &&
                      phi(parse_element(m.source, "1/t")) * u == RingElement::one(ring);
  return m;
}

}  // namespace unital
