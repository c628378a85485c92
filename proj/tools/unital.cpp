// unital: command-line front end. Results go to stdout, diagnostics to
// stderr. Exit codes: 0 true/success, 1 false, 2 unknown, 3 usage or parse
// error, 4 resource ceiling.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "unital/cert.hpp"
#include "unital/dsl.hpp"
#include "unital/error.hpp"

using namespace unital;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUnknown = 2, kUsage = 3, kResource = 4 };

int exit_for(Truth t) {
  switch (t) {
    case Truth::True: return kTrue;
    case Truth::False: return kFalse;
    default: return kUnknown;
  }
}

struct Options {
  SearchBounds bounds;
  std::uint32_t levels = TowerOptions{}.levels;
  std::string order;
  bool json = false;
  std::string hint_file;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::string> corpus;
  std::size_t stride = 50;
  std::string field = "Q";

  std::string ring, a, b, file;
  std::uint32_t n = 0;

  SearchBounds search() const {
    SearchBounds s = bounds;
    s.seed = seed;
    return s;
  }
  TowerOptions tower() const {
    TowerOptions t;
    t.search = search();
    t.levels = levels;
    t.hints = hints();
    return t;
  }
  Hints hints() const {
    if (hint_file.empty()) return {};
    std::ifstream in(hint_file);
    if (!in) throw PreconditionError("cannot read hint file " + hint_file);
    return hints_from_json(Json::parse(in));
  }
};

class Printer {
 public:
  Printer(const Options& o, const Ring* ring) : o_(o), ring_(ring) {}

  /// Emits the document, or the text lines, plus the Gröbner section when
  /// --order was given.
  void emit(Json doc, const std::vector<std::string>& lines) const {
    Json gb;
    if (!o_.order.empty() && ring_ != nullptr) {
      gb = groebner_json(*ring_, o_.order == "lex" ? MonomialOrder::lex()
                                                    : MonomialOrder::grevlex());
    }
    if (o_.json) {
      if (!gb.is_null()) doc["groebner"] = gb;
      std::cout << doc.dump(2) << '\n';
      return;
    }
    for (const auto& l : lines) std::cout << l << '\n';
    if (!gb.is_null()) {
      std::cout << "groebner basis (" << gb["order"].get<std::string>() << "):";
      for (const auto& g : gb["basis"]) std::cout << ' ' << g.get<std::string>();
      std::cout << '\n';
    }
  }

 private:
  const Options& o_;
  const Ring* ring_;
};

std::string witness_line(const char* label, const UnitWitness& w) {
  return std::string(label) + ": " + w.unit.to_string() + " (inverse " + w.inverse.to_string() + ")";
}

std::string proof_line(const NonUnitProof& p) {
  std::string s = "non-unit " + p.element.to_string() + " (" + to_string(p.reason);
  if (p.prime != 0) s += " mod " + std::to_string(p.prime);
  return s + ")";
}

std::vector<std::string> verdict_lines(const Verdict& v) {
  std::vector<std::string> out = {"ring: " + v.ring->description(),
                                  "unit-additive: " + to_string(v.value), "rule: " + v.rule};
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, FieldCert>) {
          out.push_back("field: " + c.reason);
        } else if constexpr (std::is_same_v<T, EmbeddingCert>) {
          out.push_back("embeds into " + c.target);
        } else if constexpr (std::is_same_v<T, SumCounterexample>) {
          out.push_back(witness_line("u", c.u));
          out.push_back(witness_line("v", c.v));
          out.push_back("sum: " + c.sum.to_string() + ", " + proof_line(c.sum_proof));
        } else if constexpr (std::is_same_v<T, JacobsonCert>) {
          out.push_back(witness_line("u", c.pair.u));
          out.push_back(witness_line("v", c.pair.v));
          out.push_back("sum: " + c.pair.sum.to_string() + ", " + proof_line(c.pair.sum_proof));
        } else if constexpr (std::is_same_v<T, ExhaustiveCert>) {
          out.push_back("exhaustive: " + std::to_string(c.units) + " units, " +
                        std::to_string(c.pairs) + " pairs");
        }
      },
      v.certificate);
  out.push_back("searched: " + std::to_string(v.candidates) + " candidates, " +
                std::to_string(v.units) + " units");
  for (const auto& n : v.notes) out.push_back("note: " + n);
  return out;
}

std::vector<std::string> tower_lines(const UdimResult& r) {
  std::vector<std::string> out;
  for (const auto& l : r.tower.levels) {
    std::string gens;
    for (const auto& g : l.generators) gens += (gens.empty() ? "" : ", ") + g.to_string();
    out.push_back("level " + std::to_string(l.index) + ": " + l.ring->description() + "  " +
                  to_string(l.verdict.value) + " (" + l.verdict.rule + ")" +
                  (gens.empty() ? "" : "  generators " + gens));
    for (const auto& e : l.eliminations) out.push_back("  eliminated " + e);
  }
  std::string value = r.value ? std::to_string(*r.value) : "unknown";
  std::string interval = "[" + std::to_string(r.lower) + ", " +
                         (r.upper ? std::to_string(*r.upper) : std::string("inf")) + "]";
  out.push_back("udim: " + value + (r.exact == Truth::True ? "" : "  bounds " + interval));
  if (!r.note.empty()) out.push_back("note: " + r.note);
  return out;
}

int udim_exit(const UdimResult& r) {
  if (r.exact == Truth::True) return kTrue;
  return r.note.empty() ? kUnknown : kResource;
}

int run(const std::string& cmd, const Options& o) {
  if (cmd == "chain-iso") {
    const FieldDesc* field = parse_presentation(o.field)->field();
    auto rep = chain_iso(o.n, field);
    std::vector<std::string> lines;
    for (const auto& c : rep.checks) {
      lines.push_back(c.lhs + " = " + c.value + (c.holds ? "" : "  (expected " + c.expected + ")"));
    }
    lines.push_back(rep.all_hold() ? "all identities hold" : "identity failure");
    Printer(o, nullptr).emit(to_json(rep, field), lines);
    return rep.all_hold() ? kTrue : kFalse;
  }
  if (cmd == "finite-audit") {
    auto corpus = corpus_of(o.corpus);
    auto rep = audit_corpus(corpus, o.threads, o.seed);
    std::vector<std::string> lines = {"ring,audit,detail"};
    for (const auto& v : rep.violations) lines.push_back(v.ring + "," + v.audit + "," + v.detail);
    std::cerr << "audited " << rep.rings << " rings (" << rep.unit_additive
              << " unit-additive), " << rep.checks << " checks, " << rep.violations.size()
              << " violations\n";
    Printer(o, nullptr).emit(to_json(rep, o.seed, o.stride, o.corpus), lines);
    return rep.violations.empty() ? kTrue : kFalse;
  }
  if (cmd == "replay") {
    std::ifstream in(o.file);
    if (!in) throw PreconditionError("cannot read " + o.file);
    Json doc = Json::parse(in);
    bool ok = replay_json(doc);
    std::cout << (ok ? "replay: ok" : "replay: FAILED") << '\n';
    return ok ? kTrue : kFalse;
  }

  Ring ring = parse_presentation(o.ring);
  Printer out(o, &ring);
  if (cmd == "check-ua") {
    Verdict v = check_unit_additive(ring, o.search(), o.hints());
    out.emit(to_json(v), verdict_lines(v));
    return exit_for(v.value);
  }
  if (cmd == "is-unit") {
    RingElement e = parse_element(ring, o.a);
    UnitVerdict v = is_unit(e);
    std::vector<std::string> lines = {"unit: " + to_string(v.truth)};
    if (v.witness) lines.push_back("inverse: " + v.witness->inverse.to_string());
    if (v.proof) lines.push_back(proof_line(*v.proof));
    out.emit(to_json(e, v), lines);
    return exit_for(v.truth);
  }
  if (cmd == "classify-sum") {
    RingElement u = parse_element(ring, o.a);
    RingElement v = parse_element(ring, o.b);
    SumClassification c = classify_unit_sum(u, v);
    std::vector<std::string> lines = {"sum: " + c.sum.to_string(), "class: " + to_string(c.kind)};
    if (c.counterexample) lines.push_back(proof_line(c.counterexample->sum_proof));
    out.emit(to_json(c, u, v), lines);
    switch (c.kind) {
      case SumClass::Unit:
      case SumClass::Nilpotent: return kTrue;
      case SumClass::Neither: return kFalse;
      default: return kUnknown;
    }
  }
  if (cmd == "udim") {
    UdimResult r = udim(ring, o.tower());
    out.emit(to_json(r), tower_lines(r));
    return udim_exit(r);
  }
  if (cmd == "closure") {
    Closure c = ua_closure(ring, o.tower());
    auto lines = tower_lines(c.udim);
    lines.push_back("closure: " + c.ring->description() + (c.status == Truth::True ? "" : " (partial)"));
    if (c.fraction_field) lines.push_back("the closure is the fraction field");
    out.emit(to_json(c), lines);
    return c.status == Truth::True ? kTrue : udim_exit(c.udim);
  }
  if (cmd == "kernel") {
    TorusMap m = build_torus_map(ring, parse_element(ring, o.a));
    std::string kernel;
    for (const auto& p : m.kernel) kernel += (kernel.empty() ? "" : ", ") + p.to_string();
    out.emit(to_json(m), {"map: " + m.source->description() + " -> " + ring->description() +
                              ", t -> " + m.image,
                          "kernel: " + (kernel.empty() ? std::string("0") : "(" + kernel + ")"),
                          "injective: " + to_string(m.injective)});
    return m.injective == Truth::Unknown ? kUnknown : kTrue;
  }
  throw PreconditionError("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unital: unit-additivity of commutative rings"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  Options o;
  app.add_option("--bound-summands", o.bounds.max_summands, "Summands in a unit sum")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound-degree", o.bounds.max_degree, "Degree of candidate units")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound-candidates", o.bounds.max_candidates, "Candidate elements per search")
      ->check(CLI::PositiveNumber);
  app.add_option("--levels", o.levels, "Tower levels to build")->check(CLI::PositiveNumber);
  app.add_option("--order", o.order, "Also report the defining ideal's Groebner basis")
      ->check(CLI::IsMember({"lex", "grevlex"}));
  app.add_flag("--json", o.json, "JSON certificate output");
  app.add_option("--hint", o.hint_file, "Hint file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Seed for sampling and random audits");

  auto ring_arg = [&](CLI::App* s) { s->add_option("RING", o.ring, "Ring description")->required(); };
  auto* check = app.add_subcommand("check-ua", "Decide unit-additivity");
  ring_arg(check);
  auto* unit = app.add_subcommand("is-unit", "Decide whether an element is a unit");
  ring_arg(unit);
  unit->add_option("ELT", o.a)->required();
  auto* sum = app.add_subcommand("classify-sum", "Classify the sum of two units");
  ring_arg(sum);
  sum->add_option("U", o.a)->required();
  sum->add_option("V", o.b)->required();
  ring_arg(app.add_subcommand("udim", "Unit-additive dimension"));
  ring_arg(app.add_subcommand("closure", "Unit-additive closure"));
  auto* kernel = app.add_subcommand("kernel", "Kernel of k[t,1/t] -> R, t -> IMAGE");
  ring_arg(kernel);
  kernel->add_option("IMAGE", o.a)->required();
  auto* chain = app.add_subcommand("chain-iso", "Check the chain-ring isomorphism identities");
  chain->add_option("N", o.n)->required()->check(CLI::PositiveNumber);
  chain->add_option("--field", o.field, "Coefficient field");
  auto* audit = app.add_subcommand("finite-audit", "Audit the finite corpus");
  audit->add_option("--corpus", o.corpus, "Families: cyclic, product, polynomial, idealization, 'mixed product'");
  audit->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  audit->add_option("--sample-stride", o.stride, "Corpus stride re-audited on replay")
      ->check(CLI::PositiveNumber);
  auto* replay = app.add_subcommand("replay", "Re-check a JSON certificate");
  replay->add_option("CERT", o.file)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const ResourceError& e) {
    std::cerr << "resource ceiling: " << e.what() << '\n';
    return kResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
