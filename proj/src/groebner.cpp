#include "unital/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <tuple>

#include "unital/error.hpp"

namespace unital {

namespace {

std::atomic<std::size_t> g_ceiling{1000000};

void guard(std::size_t terms) {
  if (terms > g_ceiling.load(std::memory_order_relaxed)) {
    throw ResourceError("Groebner computation exceeded the monomial ceiling of " +
                        std::to_string(g_ceiling.load()) + " terms");
  }
}

// A basis element, optionally with its representation in the input
// generators.
struct Element {
  Polynomial poly;
  std::vector<Polynomial> rep;
};

class Engine {
 public:
  Engine(const PolyRing* ring, bool tracking, std::size_t ngens)
      : ring_(ring), tracking_(tracking), ngens_(ngens) {}

  Element reduce_full(Element e) const {
    std::vector<Term> rem;
    Polynomial& p = e.poly;
    while (!p.is_zero()) {
      const Term& lt = p.leading_term();
      const Element* div = find_divisor(lt.monomial);
      if (div) {
        Monomial m = lt.monomial / div->poly.leading_monomial();
        Scalar c = lt.coeff / div->poly.leading_coeff();
        if (tracking_) {
          for (std::size_t i = 0; i < ngens_; ++i) {
            if (!div->rep[i].is_zero()) e.rep[i] = e.rep[i].sub_mul_term(c, m, div->rep[i]);
          }
        }
        p = p.sub_mul_term(c, m, div->poly);
        guard(p.size() + total_);
      } else {
        rem.push_back(lt);
        p = p.tail();
      }
    }
    e.poly = Polynomial::from_terms(ring_, std::move(rem));
    return e;
  }

  void add(Element e) {
    Scalar inv = e.poly.leading_coeff().inverse();
    e.poly = e.poly.scale(inv);
    if (tracking_) {
      for (auto& r : e.rep) r = r.scale(inv);
    }
    total_ += e.poly.size();
    guard(total_);
    std::size_t k = elems_.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (!live_[i]) continue;
      Monomial l = elems_[i].poly.leading_monomial().lcm(e.poly.leading_monomial());
      queue_.insert({l.degree(), i, k});
      pending_.insert({i, k});
    }
    elems_.push_back(std::move(e));
    live_.push_back(true);
  }

  void run() {
    while (!queue_.empty()) {
      auto [deg, i, j] = *queue_.begin();
      queue_.erase(queue_.begin());
      pending_.erase({i, j});
      const Polynomial& fi = elems_[i].poly;
      const Polynomial& fj = elems_[j].poly;
      if (fi.leading_monomial().coprime(fj.leading_monomial())) continue;
      Monomial l = fi.leading_monomial().lcm(fj.leading_monomial());
      if (chain_skips(i, j, l)) continue;
      Element s = s_element(i, j, l);
      Element h = reduce_full(std::move(s));
      if (h.poly.is_zero()) continue;
      add(std::move(h));
      if (elems_.back().poly.is_constant()) break;
    }
  }

  // Minimal, reduced, sorted basis.
  std::vector<Element> finish() {
    for (const auto& e : elems_) {
      if (e.poly.is_constant()) return {e};
    }
    std::vector<Element> minimal;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      bool redundant = false;
      const Monomial& mi = elems_[i].poly.leading_monomial();
      for (std::size_t j = 0; j < elems_.size() && !redundant; ++j) {
        if (i == j) continue;
        const Monomial& mj = elems_[j].poly.leading_monomial();
        if (mj.divides(mi) && (mj != mi || j < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(elems_[i]);
    }
    std::vector<Element> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      Engine other(ring_, false, 0);
      for (std::size_t j = 0; j < minimal.size(); ++j) {
        if (j != i) other.elems_.push_back(Element{minimal[j].poly, {}});
      }
      other.live_.assign(other.elems_.size(), true);
      // Keep the leading term; reduce the tail only.
      Term lt = minimal[i].poly.leading_term();
      Element t{minimal[i].poly.tail(), {}};
      Element r = other.reduce_full(std::move(t));
      r.poly = r.poly + Polynomial::monomial(ring_, lt.monomial, lt.coeff);
      out.push_back(std::move(r));
    }
    const MonomialOrder& ord = ring_->order();
    std::sort(out.begin(), out.end(), [&](const Element& a, const Element& b) {
      return ord.compare(a.poly.leading_monomial(), b.poly.leading_monomial()) < 0;
    });
    return out;
  }

  std::vector<Element>& elements() { return elems_; }
  const Element* find_divisor(const Monomial& m) const {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (live_[i] && elems_[i].poly.leading_monomial().divides(m)) return &elems_[i];
    }
    return nullptr;
  }

 private:
  bool chain_skips(std::size_t i, std::size_t j, const Monomial& l) const {
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      if (k == i || k == j || !live_[k]) continue;
      if (!elems_[k].poly.leading_monomial().divides(l)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (!pending_.count(key(i, k)) && !pending_.count(key(j, k))) return true;
    }
    return false;
  }

  Element s_element(std::size_t i, std::size_t j, const Monomial& l) const {
    const Element& a = elems_[i];
    const Element& b = elems_[j];
    Monomial ma = l / a.poly.leading_monomial();
    Monomial mb = l / b.poly.leading_monomial();
    Scalar ca = a.poly.leading_coeff().inverse();
    Scalar cb = b.poly.leading_coeff().inverse();
    Element s;
    s.poly = a.poly.mul_term(ma, ca).sub_mul_term(cb, mb, b.poly);
    if (tracking_) {
      s.rep.resize(ngens_);
      for (std::size_t k = 0; k < ngens_; ++k) {
        s.rep[k] = a.rep[k].mul_term(ma, ca).sub_mul_term(cb, mb, b.rep[k]);
      }
    }
    return s;
  }

  const PolyRing* ring_;
  bool tracking_;
  std::size_t ngens_;
  std::vector<Element> elems_;
  std::vector<bool> live_;
  std::set<std::tuple<std::uint64_t, std::size_t, std::size_t>> queue_;
  std::set<std::pair<std::size_t, std::size_t>> pending_;
  std::size_t total_ = 0;
};

std::vector<Polynomial> into_ring(const std::vector<Polynomial>& gens,
                                  const PolyRing* ring) {
  std::vector<Polynomial> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.rename_into(ring));
  return out;
}

}  // namespace

void set_monomial_ceiling(std::size_t ceiling) { g_ceiling.store(ceiling); }
std::size_t monomial_ceiling() { return g_ceiling.load(); }

GroebnerBasis GroebnerBasis::compute(const std::vector<Polynomial>& gens,
                                     const PolyRing* ring) {
  GroebnerBasis gb;
  gb.ring_ = ring;
  gb.gens_ = into_ring(gens, ring);
  Engine engine(ring, false, 0);
  // Inputs are inter-reduced on the way in so the initial pair set is small.
  std::vector<Polynomial> sorted;
  for (const auto& g : gb.gens_) {
    if (!g.is_zero()) sorted.push_back(g);
  }
  const MonomialOrder& ord = ring->order();
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  for (const auto& g : sorted) {
    Element e = engine.reduce_full(Element{g, {}});
    if (e.poly.is_zero()) continue;
    engine.add(std::move(e));
    if (engine.elements().back().poly.is_constant()) break;
  }
  engine.run();
  for (auto& e : engine.finish()) gb.basis_.push_back(std::move(e.poly));
  return gb;
}

bool GroebnerBasis::is_unit_ideal() const {
  return basis_.size() == 1 && basis_[0].is_constant();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  return reduce(f.rename_into(ring_), basis_);
}

bool GroebnerBasis::contains(const Polynomial& f) const {
  return normal_form(f).is_zero();
}

bool GroebnerBasis::is_zero_dimensional() const {
  if (is_unit_ideal()) return true;
  for (std::size_t v = 0; v < ring_->arity(); ++v) {
    bool found = false;
    for (const auto& g : basis_) {
      const Monomial& m = g.leading_monomial();
      if (m[v] > 0 && m[v] == m.degree()) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool GroebnerBasis::verify() const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!basis_[i].leading_coeff().is_one()) return false;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (i != j && basis_[i].leading_monomial().divides(basis_[j].leading_monomial())) {
        return false;
      }
    }
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      if (!reduce(s_polynomial(basis_[i], basis_[j]), basis_).is_zero()) return false;
    }
  }
  for (const auto& g : gens_) {
    if (!reduce(g, basis_).is_zero()) return false;
  }
  return true;
}

std::size_t GroebnerBasis::total_terms() const {
  std::size_t n = 0;
  for (const auto& g : basis_) n += g.size();
  return n;
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& by) {
  if (f.is_zero() || by.empty()) return f;
  std::vector<Term> rem;
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    const Polynomial* div = nullptr;
    for (const auto& g : by) {
      if (!g.is_zero() && g.leading_monomial().divides(lt.monomial)) {
        div = &g;
        break;
      }
    }
    if (div) {
      p = p.sub_mul_term(lt.coeff / div->leading_coeff(),
                         lt.monomial / div->leading_monomial(), *div);
      guard(p.size());
    } else {
      rem.push_back(lt);
      p = p.tail();
    }
  }
  return Polynomial::from_terms(f.ring(), std::move(rem));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  return f.mul_term(l / f.leading_monomial(), f.leading_coeff().inverse())
      .sub_mul_term(g.leading_coeff().inverse(), l / g.leading_monomial(), g);
}

bool ideal_member(const Polynomial& f, const GroebnerBasis& ideal) {
  return ideal.contains(f);
}

std::string fresh_variable(const PolyRing* ring) {
  for (std::size_t i = 0;; ++i) {
    std::string name = "#aux" + std::to_string(i);
    if (ring->index_of(name) < 0) return name;
  }
}

const PolyRing* union_ring(const FieldDesc* field, const std::vector<std::string>& first,
                           const std::vector<std::string>& second) {
  std::vector<std::string> vars = first;
  for (const auto& v : second) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  return PolyRing::get(field, vars);
}

bool radical_member(const Polynomial& f, const std::vector<Polynomial>& gens) {
  const PolyRing* ring = f.ring();
  std::string z = fresh_variable(ring);
  const PolyRing* big = union_ring(ring->field(), ring->variables(), {z});
  std::vector<Polynomial> ext = into_ring(gens, big);
  Polynomial zf = Polynomial::variable(big, z) * f.rename_into(big);
  ext.push_back(Polynomial::constant(big, 1) - zf);
  return GroebnerBasis::compute(ext, big).is_unit_ideal();
}

bool radical_member(const Polynomial& f, const GroebnerBasis& ideal) {
  return radical_member(f.rename_into(ideal.ring()), ideal.basis());
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& f,
                                            const std::vector<Polynomial>& gens) {
  const PolyRing* ring = f.ring();
  const std::size_t n = gens.size();
  std::vector<Polynomial> zeros(n, Polynomial(ring));
  if (f.is_zero()) return zeros;
  Engine engine(ring, true, n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial g = gens[i].rename_into(ring);
    if (g.is_zero()) continue;
    Element e{g, zeros};
    e.rep[i] = Polynomial::constant(ring, 1);
    engine.add(std::move(e));
  }
  engine.run();
  // f - sum q_k b_k = remainder; with b_k = sum rep_k,i g_i.
  Element acc{f, zeros};
  for (auto& r : acc.rep) r = Polynomial(ring);
  Element red = engine.reduce_full(acc);
  if (!red.poly.is_zero()) return std::nullopt;
  // reduce_full tracked acc.rep -= c m rep(b); so 0 = f + sum acc.rep_i g_i.
  std::vector<Polynomial> out;
  out.reserve(n);
  for (auto& r : red.rep) out.push_back(-r);
  return out;
}

std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens,
                                  const PolyRing* target) {
  if (gens.empty()) return {};
  const PolyRing* src = gens.front().ring();
  std::vector<std::string> elim;
  for (const auto& v : src->variables()) {
    if (target->index_of(v) < 0) elim.push_back(v);
  }
  std::vector<std::string> order = elim;
  for (const auto& v : target->variables()) order.push_back(v);
  const PolyRing* block = PolyRing::get(target->field(), order, MonomialOrder::block(elim.size()));
  GroebnerBasis gb = GroebnerBasis::compute(into_ring(gens, block), block);
  std::vector<Polynomial> kept;
  for (const auto& g : gb.basis()) {
    bool clean = true;
    for (std::size_t i = 0; i < elim.size() && clean; ++i) {
      if (g.degree_in(i) > 0) clean = false;
    }
    if (clean) kept.push_back(g.rename_into(target));
  }
  return GroebnerBasis::compute(kept, target).basis();
}

std::vector<Polynomial> map_kernel(const PolyRing* source,
                                   const std::vector<PolyFraction>& images,
                                   const std::vector<Polynomial>& relations,
                                   const Polynomial& inverted) {
  if (images.size() != source->arity()) {
    throw PreconditionError("map_kernel: expected " + std::to_string(source->arity()) +
                            " images, got " + std::to_string(images.size()));
  }
  const PolyRing* tgt = inverted.ring();
  const FieldDesc* field = tgt->field();
  // Source variables and the inverter get reserved names to avoid capture.
  std::vector<std::string> hidden;
  for (std::size_t i = 0; i < source->arity(); ++i) hidden.push_back("#s" + std::to_string(i));
  std::vector<std::string> order = tgt->variables();
  order.push_back("#z");
  const std::size_t split = order.size();
  for (const auto& h : hidden) order.push_back(h);
  const PolyRing* big = PolyRing::get(field, order, MonomialOrder::block(split));
  const PolyRing* small = PolyRing::get(field, hidden);

  std::vector<Polynomial> ideal = into_ring(relations, big);
  Polynomial w = inverted.rename_into(big);
  for (std::size_t i = 0; i < images.size(); ++i) {
    Polynomial num = images[i].num.rename_into(big);
    Polynomial den = images[i].den.rename_into(big);
    ideal.push_back(Polynomial::variable(big, hidden[i]) * den - num);
    w = w * den;
  }
  ideal.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, "#z") * w);
  GroebnerBasis gb = GroebnerBasis::compute(ideal, big);
  std::vector<Polynomial> kept;
  for (const auto& g : gb.basis()) {
    bool clean = true;
    for (std::size_t i = 0; i < split && clean; ++i) {
      if (g.degree_in(i) > 0) clean = false;
    }
    if (clean) kept.push_back(g.rename_into(small));
  }
  // Back to the caller's names, position by position.
  std::vector<Polynomial> vars;
  for (std::size_t i = 0; i < source->arity(); ++i) vars.push_back(Polynomial::variable(source, i));
  std::vector<Polynomial> out;
  for (const auto& k : kept) out.push_back(substitute(k, vars));
  return GroebnerBasis::compute(out, source).basis();
}

}  // namespace unital
