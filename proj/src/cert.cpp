#include "unital/cert.hpp"

#include <algorithm>
#include <set>

#include "unital/dsl.hpp"
#include "unital/error.hpp"
#include "unital/groebner.hpp"
#include "unital/parse.hpp"

namespace unital {

namespace {

Json header(const char* kind, const Ring& ring) {
  Json j;
  j["tool"] = kToolVersion;
  j["kind"] = kind;
  j["ring"] = ring->description();
  j["prime_asserted"] = ring->prime_asserted();
  return j;
}

Json bounds_json(const SearchBounds& b) {
  Json j;
  j["summands"] = b.max_summands;
  j["degree"] = b.max_degree;
  j["candidates"] = b.max_candidates;
  j["pool"] = b.pool;
  j["seed"] = b.seed;
  j["search_only"] = b.search_only;
  return j;
}

Json witness_json(const UnitWitness& w) {
  Json j;
  j["unit"] = w.unit.to_string();
  j["inverse"] = w.inverse.to_string();
  j["cofactor"] = w.cofactor.to_string();
  j["exponent"] = w.exponent;
  return j;
}

Json proof_json(const NonUnitProof& p) {
  Json j;
  j["element"] = p.element.to_string();
  j["reason"] = to_string(p.reason);
  j["prime"] = p.prime;
  return j;
}

Json sum_json(const SumCounterexample& c) {
  Json j;
  j["type"] = "sum";
  j["u"] = witness_json(c.u);
  j["v"] = witness_json(c.v);
  j["sum"] = c.sum.to_string();
  j["sum_proof"] = proof_json(c.sum_proof);
  return j;
}

Json certificate_json(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        Json j;
        if constexpr (std::is_same_v<T, std::monostate>) {
          j["type"] = "none";
        } else if constexpr (std::is_same_v<T, FieldCert>) {
          j["type"] = "field";
          j["reason"] = c.reason;
        } else if constexpr (std::is_same_v<T, PolynomialCert>) {
          j["type"] = "polynomial";
        } else if constexpr (std::is_same_v<T, GradingCert>) {
          j["type"] = "grading";
          j["weights"] = c.weights;
          j["relation_degrees"] = c.relation_degrees;
        } else if constexpr (std::is_same_v<T, EmbeddingCert>) {
          j["type"] = "embedding";
          j["images"] = Json::object();
          for (const auto& [k, v] : c.hint.images) j["images"][k] = v;
          j["target"] = c.target;
          j["relation_images"] = c.relation_images;
          j["inverted_images"] = c.inverted_images;
          j["kernel"] = c.kernel;
        } else if constexpr (std::is_same_v<T, SumCounterexample>) {
          j = sum_json(c);
        } else if constexpr (std::is_same_v<T, JacobsonCert>) {
          j["type"] = "jacobson";
          j["prime"] = c.prime;
          j["pair"] = sum_json(c.pair);
          j["trace"] = c.trace;
        } else {
          j["type"] = "exhaustive";
          j["units"] = c.units;
          j["pairs"] = c.pairs;
        }
        return j;
      },
      cert);
}

Json verdict_body(const Verdict& v) {
  Json j;
  j["bounds"] = bounds_json(v.bounds);
  j["value"] = to_string(v.value);
  j["rule"] = v.rule;
  j["candidates"] = v.candidates;
  j["units"] = v.units;
  j["notes"] = v.notes;
  j["certificate"] = certificate_json(v.certificate);
  return j;
}

Json optional_uint(const std::optional<std::uint32_t>& x) { return x ? Json(*x) : Json(nullptr); }

// ------------------------------------------------------------------ reading

[[noreturn]] void malformed(const std::string& what) {
  throw ParseError("malformed certificate: " + what, 1, 1);
}

Truth truth_from(const std::string& s) {
  if (s == "true") return Truth::True;
  if (s == "false") return Truth::False;
  if (s == "unknown") return Truth::Unknown;
  malformed("truth value '" + s + "'");
}

NonUnitReason reason_from(const std::string& s) {
  if (s == "radical") return NonUnitReason::Radical;
  if (s == "mod-prime") return NonUnitReason::ModPrime;
  if (s == "arithmetic") return NonUnitReason::Arithmetic;
  if (s == "table") return NonUnitReason::Table;
  malformed("non-unit reason '" + s + "'");
}

RingElement element(const Ring& r, const Json& j) { return parse_element(r, j.get<std::string>()); }

UnitWitness witness_from(const Ring& r, const Json& j) {
  UnitWitness w;
  w.unit = element(r, j.at("unit"));
  w.inverse = element(r, j.at("inverse"));
  if (r->kind() == RingKind::Affine) {
    w.cofactor = parse_polynomial(j.at("cofactor").get<std::string>(), r->poly_ring());
  }
  w.exponent = j.at("exponent").get<std::uint32_t>();
  return w;
}

NonUnitProof proof_from(const Ring& r, const Json& j) {
  NonUnitProof p;
  p.element = element(r, j.at("element"));
  p.reason = reason_from(j.at("reason").get<std::string>());
  p.prime = j.at("prime").get<std::uint32_t>();
  return p;
}

SumCounterexample sum_from(const Ring& r, const Json& j) {
  SumCounterexample c;
  c.u = witness_from(r, j.at("u"));
  c.v = witness_from(r, j.at("v"));
  c.sum = element(r, j.at("sum"));
  c.sum_proof = proof_from(r, j.at("sum_proof"));
  return c;
}

Certificate certificate_from(const Ring& r, const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "none") return std::monostate{};
  if (type == "field") return FieldCert{j.at("reason").get<std::string>()};
  if (type == "polynomial") return PolynomialCert{};
  if (type == "grading") {
    return GradingCert{j.at("weights").get<std::vector<long long>>(),
                       j.at("relation_degrees").get<std::vector<long long>>()};
  }
  if (type == "embedding") {
    EmbeddingCert c;
    for (const auto& [k, v] : j.at("images").items()) c.hint.images[k] = v.get<std::string>();
    c.target = j.at("target").get<std::string>();
    c.relation_images = j.at("relation_images").get<std::vector<std::string>>();
    c.inverted_images = j.at("inverted_images").get<std::vector<std::string>>();
    c.kernel = j.at("kernel").get<std::vector<std::string>>();
    return c;
  }
  if (type == "sum") return sum_from(r, j);
  if (type == "jacobson") {
    JacobsonCert c;
    c.prime = j.at("prime").get<std::uint32_t>();
    c.pair = sum_from(r, j.at("pair"));
    c.trace = j.at("trace").get<std::vector<std::string>>();
    return c;
  }
  if (type == "exhaustive") {
    return ExhaustiveCert{j.at("units").get<std::size_t>(), j.at("pairs").get<std::size_t>()};
  }
  malformed("certificate type '" + type + "'");
}

SearchBounds bounds_from(const Json& j) {
  SearchBounds b;
  b.max_summands = j.at("summands").get<std::uint32_t>();
  b.max_degree = j.at("degree").get<std::uint32_t>();
  b.max_candidates = j.at("candidates").get<std::size_t>();
  b.pool = j.at("pool").get<std::vector<long long>>();
  b.seed = j.at("seed").get<std::uint64_t>();
  b.search_only = j.at("search_only").get<bool>();
  return b;
}

Verdict verdict_from(const Ring& r, const Json& j) {
  Verdict v;
  v.ring = r;
  v.bounds = bounds_from(j.at("bounds"));
  v.value = truth_from(j.at("value").get<std::string>());
  v.rule = j.at("rule").get<std::string>();
  v.candidates = j.at("candidates").get<std::size_t>();
  v.units = j.at("units").get<std::size_t>();
  v.notes = j.at("notes").get<std::vector<std::string>>();
  v.certificate = certificate_from(r, j.at("certificate"));
  return v;
}

std::vector<RingElement> elements(const Ring& r, const Json& arr) {
  std::vector<RingElement> out;
  for (const auto& e : arr) out.push_back(element(r, e));
  return out;
}

Json tower_json(const TowerState& st) {
  Json levels = Json::array();
  for (const auto& l : st.levels) {
    Json j;
    j["index"] = l.index;
    j["ring"] = l.ring->description();
    Json imgs = Json::array();
    for (const auto& e : l.base_images) imgs.push_back(e.to_string());
    j["base_images"] = imgs;
    Json gens = Json::array();
    for (const auto& e : l.generators) gens.push_back(e.to_string());
    j["generators"] = gens;
    Json ws = Json::array();
    for (const auto& w : l.w_members) {
      Json m;
      m["value"] = w.value.to_string();
      Json s = Json::array();
      for (const auto& e : w.summands) s.push_back(e.to_string());
      m["summands"] = s;
      ws.push_back(m);
    }
    j["w_members"] = ws;
    Json ds = Json::array();
    for (const auto& d : l.divisions) {
      Json m;
      m["divisor"] = d.divisor.to_string();
      m["cofactor"] = d.cofactor.to_string();
      m["target"] = d.target.to_string();
      ds.push_back(m);
    }
    j["divisions"] = ds;
    Json gs = Json::array();
    for (const auto& g : l.growth) {
      Json m;
      m["name"] = g.name;
      m["generator"] = g.generator.to_string();
      gs.push_back(m);
    }
    j["field_growth"] = gs;
    j["eliminations"] = l.eliminations;
    j["verdict"] = verdict_body(l.verdict);
    levels.push_back(j);
  }
  return levels;
}

TowerState tower_from(const Ring& base, const Json& levels) {
  TowerState st;
  st.base = base;
  for (const auto& j : levels) {
    TowerLevel l;
    l.index = j.at("index").get<std::uint32_t>();
    l.ring = l.index == 0 ? base : parse_presentation(j.at("ring").get<std::string>());
    if (l.ring->description() != j.at("ring").get<std::string>()) malformed("level ring");
    l.base_images = elements(l.ring, j.at("base_images"));
    l.generators = elements(base, j.at("generators"));
    for (const auto& w : j.at("w_members")) {
      l.w_members.push_back({element(base, w.at("value")), elements(base, w.at("summands"))});
    }
    for (const auto& d : j.at("divisions")) {
      l.divisions.push_back({element(base, d.at("divisor")), element(base, d.at("cofactor")),
                             element(base, d.at("target"))});
    }
    for (const auto& g : j.at("field_growth")) {
      l.growth.push_back({g.at("name").get<std::string>(), element(base, g.at("generator"))});
    }
    l.eliminations = j.at("eliminations").get<std::vector<std::string>>();
    l.verdict = verdict_from(l.ring, j.at("verdict"));
    st.levels.push_back(std::move(l));
  }
  return st;
}

// The recorded value must follow from the recorded level verdicts.
bool udim_consistent(const TowerState& st, const Json& doc) {
  const Json& value = doc.at("value");
  if (value.is_null()) return doc.at("exact").get<std::string>() != "true";
  auto n = value.get<std::uint32_t>();
  if (n >= st.levels.size() || st.levels[n].verdict.value != Truth::True) return false;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (st.levels[i].verdict.value != Truth::False) return false;
  }
  return true;
}

bool replay_doc(const Json& original) {
  Json doc = original;
  if (doc.contains("groebner")) {
    const Json section = doc["groebner"];
    doc.erase("groebner");
    const std::string order = section.at("order").get<std::string>();
    if (order != "lex" && order != "grevlex") malformed("order '" + order + "'");
    Ring ring = parse_presentation(doc.at("ring").get<std::string>());
    MonomialOrder o = order == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
    if (groebner_json(ring, o) != section) return false;
  }
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "chain-iso") {
    const FieldDesc* field = parse_presentation(doc.at("field").get<std::string>())->field();
    auto rep = chain_iso(doc.at("n").get<std::uint32_t>(), field);
    return to_json(rep, field) == doc;
  }
  if (kind == "finite-audit") {
    auto corpus = corpus_of(doc.at("corpus").get<std::vector<std::string>>());
    if (corpus.size() != doc.at("rings").get<std::size_t>()) return false;
    const auto stride = doc.at("sample_stride").get<std::size_t>();
    if (stride == 0) malformed("sample stride");
    auto rep = audit_corpus(corpus, 1, doc.at("seed").get<std::uint64_t>(), stride);
    // The sample's violations must be exactly the recorded ones on those rings.
    std::set<std::string> sampled;
    for (std::size_t i = 0; i < corpus.size(); i += stride) sampled.insert(corpus[i].ring->name());
    std::vector<Json> expected;
    for (const auto& w : doc.at("violations")) {
      if (sampled.count(w.at("ring").get<std::string>())) expected.push_back(w);
    }
    if (expected.size() != rep.violations.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (expected[i].at("ring") != rep.violations[i].ring ||
          expected[i].at("audit") != rep.violations[i].audit ||
          expected[i].at("detail") != rep.violations[i].detail) {
        return false;
      }
    }
    return true;
  }
  Ring ring = parse_presentation(doc.at("ring").get<std::string>());
  if (kind == "check-ua") return replay(verdict_from(ring, doc));
  if (kind == "is-unit") {
    RingElement e = element(ring, doc.at("element"));
    Truth t = truth_from(doc.at("value").get<std::string>());
    if (t == Truth::True) {
      UnitWitness w = witness_from(ring, doc.at("witness"));
      return w.unit == e && replay(w);
    }
    if (t == Truth::False) {
      NonUnitProof p = proof_from(ring, doc.at("proof"));
      return p.element == e && replay(p);
    }
    return true;
  }
  if (kind == "classify-sum") {
    RingElement u = element(ring, doc.at("u"));
    RingElement v = element(ring, doc.at("v"));
    RingElement sum = element(ring, doc.at("sum"));
    if (!(u + v == sum)) return false;
    const std::string cls = doc.at("class").get<std::string>();
    if (cls == "neither") {
      SumCounterexample c = sum_from(ring, doc.at("counterexample"));
      return c.u.unit == u && c.v.unit == v && replay(c);
    }
    if (cls == "unit") return replay(witness_from(ring, doc.at("sum_witness")));
    if (cls == "nilpotent") return is_nilpotent(sum);
    return true;
  }
  if (kind == "udim" || kind == "closure") {
    TowerState st = tower_from(ring, doc.at("levels"));
    if (!replay(st) || !udim_consistent(st, doc)) return false;
    if (kind == "closure" && doc.at("status").get<std::string>() == "true") {
      auto n = doc.at("value").get<std::uint32_t>();
      return st.levels[n].ring->description() == doc.at("closure").get<std::string>();
    }
    return true;
  }
  if (kind == "kernel") {
    RingElement u = element(ring, doc.at("image"));
    return to_json(build_torus_map(ring, u)) == doc;
  }
  malformed("kind '" + kind + "'");
}

}  // namespace

Json to_json(const Verdict& v) {
  Json j = header("check-ua", v.ring);
  Json body = verdict_body(v);
  for (auto& [k, val] : body.items()) j[k] = val;
  return j;
}

Json to_json(const RingElement& e, const UnitVerdict& v) {
  Json j = header("is-unit", e.ring());
  j["element"] = e.to_string();
  j["value"] = to_string(v.truth);
  if (v.witness) j["witness"] = witness_json(*v.witness);
  if (v.proof) j["proof"] = proof_json(*v.proof);
  return j;
}

Json to_json(const SumClassification& c, const RingElement& u, const RingElement& v) {
  Json j = header("classify-sum", u.ring());
  j["u"] = u.to_string();
  j["v"] = v.to_string();
  j["sum"] = c.sum.to_string();
  j["class"] = to_string(c.kind);
  if (c.sum_witness) j["sum_witness"] = witness_json(*c.sum_witness);
  if (c.counterexample) j["counterexample"] = sum_json(*c.counterexample);
  return j;
}

Json to_json(const UdimResult& r) {
  Json j = header("udim", r.tower.base);
  j["exact"] = to_string(r.exact);
  j["value"] = optional_uint(r.value);
  j["lower"] = r.lower;
  j["upper"] = optional_uint(r.upper);
  j["stalled"] = r.tower.stalled;
  j["note"] = r.note;
  j["levels"] = tower_json(r.tower);
  return j;
}

Json to_json(const Closure& c) {
  Json j = to_json(c.udim);
  j["kind"] = "closure";
  Json out;
  for (auto& [k, v] : j.items()) {
    out[k] = v;
    if (k == "prime_asserted") {
      out["status"] = to_string(c.status);
      out["closure"] = c.ring->description();
      out["fraction_field"] = c.fraction_field;
    }
  }
  return out;
}

Json to_json(const TorusMap& m) {
  Json j = header("kernel", m.target);
  j["source"] = m.source->description();
  j["image"] = m.image;
  Json k = Json::array();
  for (const auto& p : m.kernel) k.push_back(p.to_string());
  j["kernel"] = k;
  j["injective"] = to_string(m.injective);
  j["relation_checks"] = m.relation_checks;
  return j;
}

Json to_json(const ChainIsoReport& r, const FieldDesc* field) {
  Json j;
  j["tool"] = kToolVersion;
  j["kind"] = "chain-iso";
  j["n"] = r.n;
  j["field"] = field->to_string();
  j["psi"] = r.psi;
  j["nu"] = r.nu;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x;
    x["lhs"] = c.lhs;
    x["value"] = c.value;
    x["expected"] = c.expected;
    x["holds"] = c.holds;
    checks.push_back(x);
  }
  j["checks"] = checks;
  j["all_hold"] = r.all_hold();
  return j;
}

std::vector<CorpusEntry> corpus_of(const std::vector<std::string>& families) {
  static const std::set<std::string> known = {"cyclic", "product", "polynomial", "idealization",
                                              "mixed product"};
  for (const auto& f : families) {
    if (!known.count(f)) throw PreconditionError("unknown corpus family '" + f + "'");
  }
  // Rings are immutable, so one copy serves every caller.
  static const std::vector<CorpusEntry> all = standard_corpus();
  if (families.empty()) return all;
  std::vector<CorpusEntry> out;
  for (const auto& e : all) {
    if (std::find(families.begin(), families.end(), e.family) != families.end()) {
      out.push_back(e);
    }
  }
  return out;
}

Json to_json(const CorpusReport& r, std::uint64_t seed, std::size_t sample_stride,
             const std::vector<std::string>& families) {
  Json j;
  j["tool"] = kToolVersion;
  j["kind"] = "finite-audit";
  j["corpus"] = families;
  j["seed"] = seed;
  j["rings"] = r.rings;
  j["unit_additive"] = r.unit_additive;
  j["checks"] = r.checks;
  j["sample_stride"] = sample_stride;
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json x;
    x["ring"] = v.ring;
    x["audit"] = v.audit;
    x["detail"] = v.detail;
    vs.push_back(x);
  }
  j["violations"] = vs;
  return j;
}

Json groebner_json(const Ring& ring, const MonomialOrder& order) {
  if (ring->kind() != RingKind::Affine) return nullptr;
  const PolyRing* target = ring->poly_ring()->with_order(order);
  std::vector<Polynomial> gens;
  for (const auto& g : ring->ideal().basis()) gens.push_back(g.with_ring(target));
  Json basis = Json::array();
  GroebnerBasis gb = GroebnerBasis::compute(gens, target);
  for (const auto& g : gb.basis()) basis.push_back(g.to_string());
  Json j;
  j["order"] = order.kind == OrderKind::Lex ? "lex" : "grevlex";
  j["basis"] = basis;
  return j;
}

bool replay_json(const Json& doc) {
  try {
    return replay_doc(doc);
  } catch (const Json::exception& e) {
    malformed(e.what());
  }
}

Hints hints_from_json(const Json& doc) {
  Hints h;
  try {
    if (!doc.is_object()) malformed("hint file must hold an object");
    if (doc.contains("embedding")) {
      EmbeddingHint e;
      for (const auto& [k, v] : doc.at("embedding").items()) e.images[k] = v.get<std::string>();
      h.embedding = e;
    }
    if (doc.contains("weights")) h.weights = doc.at("weights").get<std::vector<long long>>();
  } catch (const Json::exception& e) {
    malformed(e.what());
  }
  return h;
}

}  // namespace unital
