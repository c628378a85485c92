#include "unital/tower.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "unital/error.hpp"
#include "unital/parse.hpp"

namespace unital {

void TowerOptions::validate() const {
  search.validate();
  if (sum_summands < 2 || word_degree == 0 || max_seeds == 0) {
    throw PreconditionError("tower bounds: need at least 2 summands, degree 1 and one seed");
  }
}

namespace {

bool integer_type(const Ring& r) {
  return r->kind() == RingKind::Integers || r->kind() == RingKind::LocalIntegers ||
         (r->kind() == RingKind::Affine && r->integer_coefficients());
}

// NF the inverted elements, drop the ones that became scalars, saturate.
Ring build(const PolyRing* pr, const std::vector<Polynomial>& relations,
           const std::vector<Polynomial>& inverted) {
  std::vector<Polynomial> rels;
  for (const auto& r : relations) {
    if (!r.is_zero()) rels.push_back(r);
  }
  GroebnerBasis gb = GroebnerBasis::compute(rels, pr);
  AffineSpec spec;
  spec.ring = pr;
  spec.relations = gb.basis();
  spec.saturate = true;
  std::set<std::string> seen;
  for (const auto& d : inverted) {
    Polynomial n = gb.normal_form(d);
    if (n.is_zero()) throw Error("tower: an inverted element vanished");
    if (n.is_constant()) continue;
    n = n.monic();
    if (seen.insert(n.to_string()).second) spec.inverted.push_back(n);
  }
  return RingPresentation::affine(std::move(spec));
}

std::vector<RingElement> variables_of(const Ring& r) {
  std::vector<RingElement> out;
  if (r->kind() != RingKind::Affine) return out;
  for (std::size_t i = 0; i < r->poly_ring()->arity(); ++i) {
    out.push_back(RingElement::from_polynomial(r, Polynomial::variable(r->poly_ring(), i)));
  }
  return out;
}

std::vector<RingElement> push(const Ring& from, const Ring& to,
                              const std::vector<RingElement>& var_images,
                              const std::vector<RingElement>& elems) {
  RingMap m(from, to, var_images);
  std::vector<RingElement> out;
  for (const auto& e : elems) out.push_back(m(e));
  return out;
}

// Base elements worth trying as divisors and unit generators, with the aux
// name when there is one.
struct PoolEntry {
  RingElement value;
  std::string aux;
};

std::vector<PoolEntry> base_pool(const TowerState& st) {
  std::vector<PoolEntry> out;
  std::set<std::string> seen;
  auto add = [&](const RingElement& e, const std::string& aux) {
    if (e.is_zero() || e.is_scalar()) return;
    // Scalar multiples add nothing.
    std::string key = e.to_string();
    if (e.ring()->kind() == RingKind::Affine) {
      key = e.numerator().monic().to_string();
      for (auto a : e.den_exponents()) key += "|" + std::to_string(a);
    }
    if (seen.insert(key).second) out.push_back({e, aux});
  };
  const Ring& r = st.base;
  if (r->kind() == RingKind::Affine) {
    for (const auto& a : r->aux()) add(RingElement::from_polynomial(r, a.value), a.name);
    for (const auto& v : variables_of(r)) add(v, "");
    for (const auto& d : r->inverted()) add(RingElement::from_polynomial(r, d), "");
  }
  for (const auto& d : st.discovered) add(d, "");
  return out;
}

std::vector<RingElement> level_generators(const TowerState& st, const Ring& level,
                                          const std::vector<RingElement>& images) {
  std::vector<RingElement> out;
  if (st.base->kind() != RingKind::Affine) return out;
  RingMap m(st.base, level, images);
  for (const auto& p : base_pool(st)) {
    RingElement img = m(p.value);
    if (img.is_scalar()) continue;
    if (is_unit(img).truth == Truth::True) out.push_back(p.value);
  }
  return out;
}

// Exponent vectors of total degree d over r generators, first generator
// varying slowest.
void compositions(std::size_t r, std::uint32_t d, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> e(r, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == r) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (r > 0) rec(rec, 0, d);
}

std::vector<SumMember> seeds(const Ring& base, const std::vector<RingElement>& gens,
                             const TowerOptions& o) {
  constexpr std::size_t kMaxWords = 32;
  std::vector<RingElement> words = {RingElement::one(base)};
  for (std::uint32_t d = 1; d <= o.word_degree && words.size() < kMaxWords; ++d) {
    std::vector<std::vector<std::uint32_t>> exps;
    compositions(gens.size(), d, exps);
    for (const auto& e : exps) {
      if (words.size() >= kMaxWords) break;
      RingElement w = RingElement::one(base);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) w = w * gens[i].pow(e[i]);
      }
      words.push_back(w);
    }
  }
  std::vector<SumMember> out;
  std::set<std::string> seen;
  std::vector<std::size_t> pick;
  for (std::uint32_t k = 2; k <= o.sum_summands && out.size() < o.max_seeds; ++k) {
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (out.size() >= o.max_seeds) return;
      if (pick.size() == k) {
        for (std::uint32_t signs = 0; signs < (1U << (k - 1)) && out.size() < o.max_seeds;
             ++signs) {
          SumMember m;
          m.value = RingElement::zero(base);
          for (std::size_t t = 0; t < k; ++t) {
            bool negative = t > 0 && ((signs >> (t - 1)) & 1U);
            RingElement s = negative ? -words[pick[t]] : words[pick[t]];
            m.value = m.value + s;
            m.summands.push_back(s);
          }
          if (is_nilpotent(m.value)) continue;
          if (seen.insert(m.value.to_string()).second) out.push_back(std::move(m));
        }
        return;
      }
      for (std::size_t i = start; i < words.size(); ++i) {
        pick.push_back(i);
        self(self, i);
        pick.pop_back();
        if (out.size() >= o.max_seeds) return;
      }
    };
    rec(rec, 0);
  }
  return out;
}

Ring rationalize(const Ring& r) {
  if (r->kind() != RingKind::Affine) return build(PolyRing::get(rational_field(), {}), {}, {});
  return build(r->poly_ring(), r->ideal().basis(), r->inverted());
}

bool independent(const Ring& level, const std::vector<RingElement>& elems) {
  const PolyRing* pr = level->poly_ring();
  std::vector<std::string> names;
  std::vector<PolyFraction> images;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    names.push_back("#g" + std::to_string(i));
    images.push_back({elems[i].numerator(), elems[i].denominator()});
  }
  const PolyRing* src = PolyRing::get(pr->field(), names);
  return map_kernel(src, images, level->ideal().basis(), level->inverted_product()).empty();
}

struct GrowItem {
  RingElement value;  // in the level ring
  std::string name;
  int moved = -1;     // index of a variable that becomes the field generator
};

struct Moved {
  Ring ring;
  std::vector<RingElement> var_images;  // of the old ring's variables
};

Moved grow(const Ring& level, const std::vector<GrowItem>& items) {
  const PolyRing* pr = level->poly_ring();
  std::vector<std::string> names;
  for (const auto& it : items) names.push_back(it.name);
  const FieldDesc* field = extend_by_fractions(pr->field(), names);
  auto generator = [&](const std::string& n) {
    return Scalar::generator(field, static_cast<std::size_t>(field->variable_index(n)));
  };
  std::vector<bool> moved(pr->arity(), false);
  for (const auto& it : items) {
    if (it.moved >= 0) moved[static_cast<std::size_t>(it.moved)] = true;
  }
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < pr->arity(); ++i) {
    if (!moved[i]) kept.push_back(pr->variables()[i]);
  }
  const PolyRing* target = PolyRing::get(field, kept);
  std::vector<Polynomial> imgs;
  for (std::size_t i = 0; i < pr->arity(); ++i) {
    imgs.push_back(moved[i] ? Polynomial::constant(target, generator(pr->variables()[i]))
                            : Polynomial::variable(target, pr->variables()[i]));
  }
  std::vector<Polynomial> rels, inv;
  for (const auto& b : level->ideal().basis()) rels.push_back(substitute(b, imgs));
  for (const auto& it : items) {
    if (it.moved >= 0) continue;
    Polynomial t = Polynomial::constant(target, generator(it.name));
    rels.push_back(substitute(it.value.numerator(), imgs) -
                   t * substitute(it.value.denominator(), imgs));
  }
  for (const auto& d : level->inverted()) inv.push_back(substitute(d, imgs));
  Moved out;
  out.ring = build(target, rels, inv);
  for (const auto& p : imgs) {
    out.var_images.push_back(
        RingElement::from_polynomial(out.ring, p.rename_into(out.ring->poly_ring())));
  }
  return out;
}

// Solve a*v = b for v when a is a unit, dropping v.
std::optional<std::pair<Moved, std::string>> eliminate_one(const Ring& level) {
  const PolyRing* pr = level->poly_ring();
  for (std::size_t vi = pr->arity(); vi-- > 0;) {
    for (const auto& r : level->ideal().basis()) {
      if (r.degree_in(vi) != 1) continue;
      auto cs = coefficients_in(r, vi);
      Polynomial a = cs[1], b = -cs[0];
      if (!a.is_constant() &&
          is_unit(RingElement::from_polynomial(level, a)).truth != Truth::True) {
        continue;
      }
      std::vector<std::string> kept;
      for (std::size_t i = 0; i < pr->arity(); ++i) {
        if (i != vi) kept.push_back(pr->variables()[i]);
      }
      const PolyRing* target = PolyRing::get(pr->field(), kept);
      auto homog = [&](const Polynomial& p) {
        auto c = coefficients_in(p, vi);
        const auto e = static_cast<std::uint32_t>(c.size() - 1);
        Polynomial acc(pr);
        for (std::uint32_t k = 0; k <= e; ++k) acc += c[k] * b.pow(k) * a.pow(e - k);
        return acc.rename_into(target);
      };
      std::vector<Polynomial> rels, inv;
      for (const auto& q : level->ideal().basis()) {
        if (q != r) rels.push_back(homog(q));
      }
      for (const auto& d : level->inverted()) inv.push_back(homog(d));
      if (!a.is_constant()) inv.push_back(a.rename_into(target));
      Moved out;
      out.ring = build(target, rels, inv);
      const PolyRing* tr = out.ring->poly_ring();
      RingElement value = RingElement::from_polynomial(out.ring, b.rename_into(tr)) *
                          inverse(RingElement::from_polynomial(out.ring, a.rename_into(tr)));
      for (std::size_t i = 0; i < pr->arity(); ++i) {
        out.var_images.push_back(i == vi ? value
                                         : RingElement::from_polynomial(
                                               out.ring, Polynomial::variable(tr, pr->variables()[i])));
      }
      std::string note = pr->variables()[vi] + " = " + value.to_string();
      return std::make_pair(std::move(out), std::move(note));
    }
  }
  return std::nullopt;
}

std::string growth_name(const PoolEntry& p, const RingElement& img, const Ring& level,
                        std::set<std::string>& taken, std::size_t& counter, int& moved) {
  moved = -1;
  if (p.aux.size() > 1 && p.aux[0] == 'f') {
    std::string n = "x" + p.aux.substr(1);
    if (!taken.count(n)) {
      taken.insert(n);
      return n;
    }
  }
  const PolyRing* pr = level->poly_ring();
  if (img.denominator().is_one() && img.numerator().size() == 1 &&
      img.numerator().leading_coeff().is_one() && img.numerator().total_degree() == 1) {
    auto vars = img.numerator().support_variables();
    moved = static_cast<int>(vars[0]);
    return pr->variables()[vars[0]];
  }
  std::string n;
  do {
    n = "t" + std::to_string(++counter);
  } while (taken.count(n));
  taken.insert(n);
  return n;
}

}  // namespace

TowerState tower_start(const Ring& ring, const TowerOptions& options) {
  options.validate();
  TowerState st;
  st.base = ring;
  TowerLevel l0;
  l0.ring = ring;
  l0.base_images = variables_of(ring);
  RingElement one = RingElement::one(ring);
  l0.w_members.push_back({one, {one}});
  l0.generators = level_generators(st, ring, l0.base_images);
  l0.verdict = check_unit_additive(ring, options.search, options.hints);
  st.levels.push_back(std::move(l0));
  return st;
}

RingElement to_level(const TowerState& state, std::size_t level, const RingElement& base) {
  if (base.ring() != state.base) throw DomainError("to_level: not a base element");
  if (level == 0) return base;
  const TowerLevel& l = state.levels.at(level);
  return RingMap(state.base, l.ring, l.base_images)(base);
}

TowerState tower_step(const TowerState& state, const TowerOptions& o) {
  o.validate();
  TowerState out = state;
  out.stalled = false;
  const TowerLevel& last = state.levels.back();
  const Ring& base = state.base;
  if (base->kind() == RingKind::Finite) {
    out.stalled = true;
    return out;
  }
  TowerLevel next;
  next.index = last.index + 1;
  next.w_members = seeds(base, last.generators, o);

  // S1: trial division of the new W members by pool elements that are not
  // yet units.
  std::set<std::string> known;
  for (const auto& d : out.discovered) known.insert(d.to_string());
  for (const auto& p : base_pool(state)) {
    if (is_unit(to_level(state, last.index, p.value)).truth == Truth::True) continue;
    for (const auto& w : next.w_members) {
      auto h = divide(w.value, p.value);
      if (!h) continue;
      next.divisions.push_back({p.value, *h, w.value});
      for (const auto& e : {p.value, *h}) {
        if (!e.is_scalar() && known.insert(e.to_string()).second) out.discovered.push_back(e);
      }
      break;
    }
  }

  Ring level = last.ring;
  std::vector<RingElement> images = last.base_images;
  bool changed = false;
  if (integer_type(level)) {
    Ring q = rationalize(level);
    if (level->kind() == RingKind::Affine) images = push(level, q, variables_of(q), images);
    level = q;
    changed = true;
  }

  // S2: independent unit generators become field generators.
  if (level->poly_ring()->arity() > 0) {
    std::set<std::string> taken(level->poly_ring()->variables().begin(),
                                level->poly_ring()->variables().end());
    for (const auto& n : level->field()->variables()) taken.insert(n);
    std::vector<GrowItem> items;
    std::vector<RingElement> chosen;
    std::size_t counter = 0;
    RingMap m(base, level, images);
    for (const auto& p : base_pool(state)) {
      if (std::find_if(last.generators.begin(), last.generators.end(),
                       [&](const RingElement& g) { return g == p.value; }) ==
          last.generators.end()) {
        continue;
      }
      RingElement img = m(p.value);
      if (img.is_scalar()) continue;
      chosen.push_back(img);
      if (!independent(level, chosen)) {
        chosen.pop_back();
        continue;
      }
      GrowItem it;
      it.value = img;
      it.name = growth_name(p, img, level, taken, counter, it.moved);
      items.push_back(it);
      next.growth.push_back({it.name, p.value});
    }
    if (!items.empty()) {
      Moved g = grow(level, items);
      images = push(level, g.ring, g.var_images, images);
      level = g.ring;
      changed = true;
    }
  }

  while (level->poly_ring()->arity() > 0) {
    auto e = eliminate_one(level);
    if (!e) break;
    images = push(level, e->first.ring, e->first.var_images, images);
    level = e->first.ring;
    next.eliminations.push_back(e->second);
    changed = true;
  }

  if (!changed) {
    out.stalled = true;
    return out;
  }
  next.ring = level;
  next.base_images = images;
  next.generators = level_generators(out, level, images);
  next.verdict = check_unit_additive(level, o.search);
  out.levels.push_back(std::move(next));
  return out;
}

UdimResult udim(const Ring& ring, const TowerOptions& options) {
  UdimResult res;
  res.tower = tower_start(ring, options);
  if (ring->kind() == RingKind::Finite && res.tower.levels[0].verdict.value != Truth::True) {
    throw PreconditionError("udim: " + ring->description() +
                            " is a finite ring that is not local");
  }
  try {
    while (true) {
      const TowerLevel& last = res.tower.levels.back();
      if (last.verdict.value == Truth::True) break;
      if (res.tower.levels.size() > options.levels) break;
      TowerState next = tower_step(res.tower, options);
      if (next.stalled) {
        res.tower.stalled = true;
        break;
      }
      res.tower = std::move(next);
    }
  } catch (const ResourceError& e) {
    res.note = e.what();
  }
  const auto& levels = res.tower.levels;
  bool all_false = true;
  for (std::uint32_t i = 0; i < levels.size(); ++i) {
    Truth v = levels[i].verdict.value;
    if (v == Truth::False) res.lower = std::max(res.lower, i + 1);
    if (v == Truth::True && !res.upper) {
      res.upper = i;
      if (all_false) {
        res.exact = Truth::True;
        res.value = i;
      }
    }
    if (v != Truth::False) all_false = false;
  }
  return res;
}

Closure ua_closure(const Ring& ring, const TowerOptions& options) {
  Closure c;
  c.udim = udim(ring, options);
  const auto& levels = c.udim.tower.levels;
  if (c.udim.value) {
    c.status = Truth::True;
    c.ring = levels[*c.udim.value].ring;
  } else {
    c.ring = levels.back().ring;
  }
  c.fraction_field = c.status == Truth::True && c.ring->kind() == RingKind::Affine &&
                     !c.ring->integer_coefficients() && c.ring->poly_ring()->arity() == 0;
  return c;
}

bool replay(const TowerState& st) {
  if (!st.base || st.levels.empty()) return false;
  const Ring& base = st.base;
  auto unit_at = [&](std::size_t level, const RingElement& e) {
    return is_unit(to_level(st, level, e)).truth == Truth::True;
  };
  for (std::size_t i = 0; i < st.levels.size(); ++i) {
    const TowerLevel& l = st.levels[i];
    if (l.index != i || !l.ring) return false;
    if (i == 0 && l.ring != base) return false;
    if (i > 0 && base->kind() == RingKind::Affine &&
        !RingMap(base, l.ring, l.base_images).well_defined()) {
      return false;
    }
    for (const auto& g : l.generators) {
      if (g.ring() != base || !unit_at(i, g) || to_level(st, i, g).is_scalar()) return false;
    }
    for (const auto& w : l.w_members) {
      RingElement sum = RingElement::zero(base);
      for (const auto& s : w.summands) {
        if (i > 0 && !unit_at(i - 1, s)) return false;
        sum = sum + s;
      }
      if (!(sum == w.value) || is_nilpotent(w.value) || !unit_at(i, w.value)) return false;
    }
    for (const auto& d : l.divisions) {
      if (!(d.divisor * d.cofactor == d.target) || !unit_at(i, d.divisor)) return false;
      bool listed = std::any_of(l.w_members.begin(), l.w_members.end(),
                                [&](const SumMember& w) { return w.value == d.target; });
      if (!listed) return false;
    }
    for (const auto& g : l.growth) {
      if (i == 0 || !unit_at(i - 1, g.generator)) return false;
      const FieldDesc* f = l.ring->field();
      int idx = f->variable_index(g.name);
      if (idx < 0) return false;
      RingElement expect =
          RingElement::from_scalar(l.ring, Scalar::generator(f, static_cast<std::size_t>(idx)));
      if (!(to_level(st, i, g.generator) == expect)) return false;
    }
    if (l.verdict.ring != l.ring || !replay(l.verdict)) return false;
  }
  return true;
}

MonotonicityReport monotonicity_audit(const Ring& a, const Ring& b,
                                      const std::vector<RingElement>& images,
                                      std::uint32_t levels, bool polynomial_extension,
                                      const TowerOptions& options) {
  RingMap phi(a, b, images);
  if (!phi.well_defined()) {
    throw PreconditionError("monotonicity audit: the map is not well defined");
  }
  TowerOptions o = options;
  o.levels = levels;
  MonotonicityReport rep;
  rep.levels = levels;
  rep.source = udim(a, o);
  rep.target = udim(b, o);
  const auto& sa = rep.source.tower;
  const auto& sb = rep.target.tower;
  for (std::size_t i = 0; i < sa.levels.size(); ++i) {
    // Past its top level the target's W is stationary.
    const std::size_t j = std::min(i, sb.levels.size() - 1);
    const TowerLevel& la = sa.levels[i];
    std::vector<RingElement> members = la.generators;
    for (const auto& w : la.w_members) members.push_back(w.value);
    for (const auto& d : la.divisions) {
      members.push_back(d.divisor);
      members.push_back(d.cofactor);
    }
    for (const auto& m : members) {
      ++rep.checked;
      RingElement img = to_level(sb, j, phi(m));
      if (is_unit(img).truth != Truth::True) {
        rep.failures.push_back("level " + std::to_string(i) + ": " + m.to_string() + " maps to " +
                               img.to_string() + ", not a unit of " +
                               sb.levels[j].ring->description());
      }
    }
  }
  rep.extra_target_units = sb.levels[0].generators.size() > sa.levels[0].generators.size();
  rep.udim_agree = polynomial_extension && rep.source.value && rep.target.value &&
                   *rep.source.value == *rep.target.value;
  return rep;
}

}  // namespace unital
