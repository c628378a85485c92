#include "unital/ring.hpp"

#include <algorithm>
#include <cctype>

#include "unital/error.hpp"
#include "unital/parse.hpp"

namespace unital {

std::string to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    default: return "unknown";
  }
}

std::string to_string(NonUnitReason r) {
  switch (r) {
    case NonUnitReason::Radical: return "radical";
    case NonUnitReason::ModPrime: return "mod-prime";
    case NonUnitReason::Arithmetic: return "arithmetic";
    default: return "table";
  }
}

std::string to_string(SumClass c) {
  switch (c) {
    case SumClass::Unit: return "unit";
    case SumClass::Nilpotent: return "nilpotent";
    case SumClass::Neither: return "neither";
    default: return "unknown";
  }
}

namespace {

bool integral(const Polynomial& f) {
  if (f.field() != rational_field()) return false;
  for (const auto& t : f.terms()) {
    if (t.coeff.rational().get_den() != 1) return false;
  }
  return true;
}

// "(...)" spanning the whole string.
bool one_group(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
    if (depth == 0 && i + 1 < s.size()) return false;
  }
  return true;
}

std::string wrap(const std::string& s) { return one_group(s) ? s : "(" + s + ")"; }

bool is_atom(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string paren(const Polynomial& f) {
  std::string s = f.to_string();
  return is_atom(s) ? s : wrap(s);
}

Polynomial product(const std::vector<Polynomial>& fs, const PolyRing* ring) {
  Polynomial p = Polynomial::constant(ring, 1);
  for (const auto& f : fs) p = p * f;
  return p;
}

}  // namespace

// ------------------------------------------------------------ presentations

std::string RingPresentation::describe_affine(const AffineSpec& spec,
                                              const std::vector<Polynomial>& rels) {
  const auto& vars = spec.ring->variables();
  std::string s = spec.integer_coefficients ? "ZZ" : spec.ring->field()->to_string();
  if (!vars.empty() || spec.integer_coefficients) {
    s += "[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    s += "]";
  }
  if (!rels.empty()) {
    s += "/(";
    for (std::size_t i = 0; i < rels.size(); ++i) s += (i ? "," : "") + rels[i].to_string();
    s += ")";
  }
  for (const auto& d : spec.inverted) s += "[1/" + paren(d) + "]";
  return s;
}

Ring RingPresentation::affine(AffineSpec spec) {
  if (!spec.ring) throw PreconditionError("affine presentation without a polynomial ring");
  const PolyRing* ring = spec.ring;
  if (!(ring->order() == MonomialOrder::grevlex())) ring = ring->with_order(MonomialOrder::grevlex());
  auto into = [&](std::vector<Polynomial>& fs) {
    for (auto& f : fs) f = f.rename_into(ring);
  };
  into(spec.relations);
  into(spec.inverted);
  for (auto& a : spec.aux) a.value = a.value.rename_into(ring);
  spec.ring = ring;
  if (spec.integer_coefficients) {
    if (ring->field() != rational_field()) {
      throw PreconditionError("integer presentations need rational coefficients");
    }
    for (const auto& f : spec.relations) {
      if (!integral(f)) throw PreconditionError("relation " + f.to_string() + " is not integral");
    }
    for (const auto& f : spec.inverted) {
      if (!integral(f)) throw PreconditionError("inverted element " + f.to_string() + " is not integral");
    }
  }
  for (const auto& d : spec.inverted) {
    if (d.is_zero()) throw PreconditionError("cannot invert 0");
  }

  auto r = std::shared_ptr<RingPresentation>(new RingPresentation());
  r->kind_ = RingKind::Affine;
  r->ring_ = ring;
  r->prime_asserted_ = spec.prime_asserted;
  r->integer_ = spec.integer_coefficients;
  r->inverted_ = spec.inverted;
  r->aux_ = spec.aux;
  r->d_ = product(spec.inverted, ring);

  GroebnerBasis gb = GroebnerBasis::compute(spec.relations, ring);
  if (spec.saturate && !spec.inverted.empty() && !gb.is_zero_ideal()) {
    std::string z = fresh_variable(ring);
    const PolyRing* big = union_ring(ring->field(), {z}, ring->variables());
    std::vector<Polynomial> gens;
    for (const auto& g : gb.basis()) gens.push_back(g.rename_into(big));
    gens.push_back(Polynomial::constant(big, 1) -
                   Polynomial::variable(big, z) * r->d_.rename_into(big));
    gb = GroebnerBasis::compute(eliminate(gens, ring), ring);
  }
  if (gb.is_unit_ideal()) {
    throw PreconditionError("relations generate the unit ideal");
  }
  for (const auto& d : spec.inverted) {
    if (gb.contains(d)) {
      throw PreconditionError("inverted element " + d.to_string() + " lies in the relation ideal");
    }
  }
  r->input_relations_ = spec.saturate ? gb.basis() : spec.relations;
  r->ideal_ = std::make_shared<const GroebnerBasis>(std::move(gb));
  r->description_ = spec.description.empty() ? describe_affine(spec, r->input_relations_)
                                             : spec.description;
  return r;
}

Ring RingPresentation::integers() {
  static const Ring zz = [] {
    auto r = std::shared_ptr<RingPresentation>(new RingPresentation());
    r->kind_ = RingKind::Integers;
    r->description_ = "ZZ";
    r->prime_asserted_ = true;
    return r;
  }();
  return zz;
}

Ring RingPresentation::local_integers(std::uint32_t p) {
  if (!is_prime_u32(p)) throw PreconditionError("Z_(" + std::to_string(p) + "): not a prime");
  auto r = std::shared_ptr<RingPresentation>(new RingPresentation());
  r->kind_ = RingKind::LocalIntegers;
  r->prime_ = p;
  r->prime_asserted_ = true;
  r->description_ = "Z_(" + std::to_string(p) + ")";
  return r;
}

Ring RingPresentation::finite(FiniteRingPtr table, std::string description) {
  auto r = std::shared_ptr<RingPresentation>(new RingPresentation());
  r->kind_ = RingKind::Finite;
  r->description_ = description.empty() ? table->name() : std::move(description);
  r->prime_asserted_ = false;
  r->table_ = std::move(table);
  return r;
}

const FieldDesc* RingPresentation::field() const {
  return ring_ ? ring_->field() : rational_field();
}

bool RingPresentation::is_polynomial_ring() const {
  if (kind_ != RingKind::Affine || integer_ || !ideal_->is_zero_ideal()) return false;
  for (const auto& d : inverted_) {
    if (!d.is_constant()) return false;
  }
  return true;
}

// ------------------------------------------------------------------ elements

RingElement RingElement::zero(const Ring& ring) { return from_int(ring, 0); }
RingElement RingElement::one(const Ring& ring) { return from_int(ring, 1); }

RingElement RingElement::from_int(const Ring& ring, long long value) {
  switch (ring->kind()) {
    case RingKind::Affine:
      return from_polynomial(ring, Polynomial::constant(ring->poly_ring(), value));
    case RingKind::Finite: {
      const FiniteRing& t = ring->table();
      Elem acc = 0;
      Elem step = value >= 0 ? t.one() : t.neg(t.one());
      long long n = value >= 0 ? value : -value;
      n %= static_cast<long long>(t.size());  // the characteristic divides |R|
      for (long long i = 0; i < n; ++i) acc = t.add(acc, step);
      return from_index(ring, acc);
    }
    default:
      return from_rational(ring, mpq_class(mpz_class(static_cast<long>(value))));
  }
}

RingElement RingElement::from_scalar(const Ring& ring, const Scalar& value) {
  if (ring->kind() == RingKind::Affine) {
    return from_polynomial(ring, Polynomial::constant(ring->poly_ring(),
                                                      embed_scalar(value, ring->field())));
  }
  if (value.field() != rational_field()) throw DomainError("scalar is not rational");
  return from_rational(ring, value.rational());
}

RingElement RingElement::from_polynomial(const Ring& ring, const Polynomial& num,
                                         std::vector<std::uint32_t> den) {
  if (ring->kind() != RingKind::Affine) {
    if (!num.is_constant() || !den.empty()) throw DomainError("not an affine presentation");
    return from_scalar(ring, num.constant_value());
  }
  RingElement e;
  e.ring_ = ring;
  e.num_ = num.rename_into(ring->poly_ring());
  den.resize(ring->inverted().size(), 0);
  e.den_ = std::move(den);
  e.normalize();
  return e;
}

RingElement RingElement::from_rational(const Ring& ring, const mpq_class& value) {
  switch (ring->kind()) {
    case RingKind::Affine:
      return from_polynomial(ring, Polynomial::constant(
                                       ring->poly_ring(),
                                       embed_scalar(Scalar::from_rational(rational_field(), value),
                                                    ring->field())));
    case RingKind::Integers:
      if (value.get_den() != 1) throw DomainError(value.get_str() + " is not an integer");
      break;
    case RingKind::LocalIntegers:
      if (value.get_den() % ring->prime() == 0) {
        throw DomainError(value.get_str() + " is not in " + ring->description());
      }
      break;
    case RingKind::Finite: {
      if (value.get_den() != 1) throw DomainError("finite rings take integer literals");
      mpz_class n = value.get_num();
      RingElement e = from_int(ring, n.get_si() % static_cast<long>(ring->table().size()));
      return e;
    }
  }
  RingElement e;
  e.ring_ = ring;
  e.q_ = value;
  e.q_.canonicalize();
  return e;
}

RingElement RingElement::from_index(const Ring& ring, Elem index) {
  if (ring->kind() != RingKind::Finite || index >= ring->table().size()) {
    throw DomainError("bad finite element index");
  }
  RingElement e;
  e.ring_ = ring;
  e.index_ = index;
  return e;
}

RingElement RingElement::inverse_of_inverted(const Ring& ring, std::size_t j) {
  std::vector<std::uint32_t> den(ring->inverted().size(), 0);
  den.at(j) = 1;
  return from_polynomial(ring, Polynomial::constant(ring->poly_ring(), 1), den);
}

void RingElement::normalize() {
  const auto& D = ring_->inverted();
  const bool integer = ring_->integer_coefficients();
  const GroebnerBasis& P = ring_->ideal();
  if (!integer) num_ = P.normal_form(num_);
  for (std::size_t j = 0; j < D.size(); ++j) {
    if (den_[j] == 0) continue;
    if (num_.is_zero()) {
      den_[j] = 0;
      continue;
    }
    if (D[j].is_constant() && !integer) {
      num_ = num_.scale(D[j].constant_value().pow(-static_cast<long long>(den_[j])));
      den_[j] = 0;
      continue;
    }
    while (den_[j] > 0) {
      auto q = divide_exact(num_, D[j]);
      if (!q) break;
      num_ = integer ? *q : P.normal_form(*q);
      --den_[j];
    }
  }
}

void RingElement::require_same(const RingElement& o) const {
  if (ring_ != o.ring_) throw DomainError("elements of different rings");
}

Polynomial RingElement::denominator() const {
  Polynomial p = Polynomial::constant(ring_->poly_ring(), 1);
  for (std::size_t j = 0; j < den_.size(); ++j) {
    if (den_[j]) p = p * ring_->inverted()[j].pow(den_[j]);
  }
  return p;
}

bool RingElement::is_zero() const {
  switch (ring_->kind()) {
    case RingKind::Affine: return ring_->ideal().contains(num_);
    case RingKind::Finite: return index_ == 0;
    default: return q_ == 0;
  }
}

bool RingElement::is_scalar() const {
  switch (ring_->kind()) {
    case RingKind::Affine:
      return std::all_of(den_.begin(), den_.end(), [](auto a) { return a == 0; }) &&
             num_.is_constant();
    case RingKind::Finite: return false;
    default: return true;
  }
}

std::uint64_t RingElement::degree() const {
  if (ring_->kind() != RingKind::Affine) return 0;
  return std::max(num_.total_degree(), denominator().total_degree());
}

std::size_t RingElement::term_count() const {
  return ring_->kind() == RingKind::Affine ? num_.size() : 1;
}

RingElement RingElement::operator+(const RingElement& o) const {
  require_same(o);
  RingElement r;
  r.ring_ = ring_;
  switch (ring_->kind()) {
    case RingKind::Affine: {
      std::vector<std::uint32_t> g(den_.size());
      Polynomial a = num_, b = o.num_;
      for (std::size_t j = 0; j < den_.size(); ++j) {
        g[j] = std::max(den_[j], o.den_[j]);
        const Polynomial& D = ring_->inverted()[j];
        if (g[j] > den_[j]) a = a * D.pow(g[j] - den_[j]);
        if (g[j] > o.den_[j]) b = b * D.pow(g[j] - o.den_[j]);
      }
      r.num_ = a + b;
      r.den_ = std::move(g);
      r.normalize();
      return r;
    }
    case RingKind::Finite:
      r.index_ = ring_->table().add(index_, o.index_);
      return r;
    default:
      r.q_ = q_ + o.q_;
      return r;
  }
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  switch (ring_->kind()) {
    case RingKind::Affine: r.num_ = -num_; break;
    case RingKind::Finite: r.index_ = ring_->table().neg(index_); break;
    default: r.q_ = -q_;
  }
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
  require_same(o);
  RingElement r;
  r.ring_ = ring_;
  switch (ring_->kind()) {
    case RingKind::Affine:
      r.num_ = num_ * o.num_;
      r.den_.resize(den_.size());
      for (std::size_t j = 0; j < den_.size(); ++j) r.den_[j] = den_[j] + o.den_[j];
      r.normalize();
      return r;
    case RingKind::Finite:
      r.index_ = ring_->table().mul(index_, o.index_);
      return r;
    default:
      r.q_ = q_ * o.q_;
      return r;
  }
}

RingElement RingElement::pow(std::uint32_t n) const {
  RingElement result = one(ring_), base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool RingElement::operator==(const RingElement& o) const {
  if (ring_ != o.ring_) return false;
  switch (ring_->kind()) {
    case RingKind::Affine: {
      Polynomial a = num_, b = o.num_;
      for (std::size_t j = 0; j < den_.size(); ++j) {
        const Polynomial& D = ring_->inverted()[j];
        if (o.den_[j] > den_[j]) a = a * D.pow(o.den_[j] - den_[j]);
        if (den_[j] > o.den_[j]) b = b * D.pow(den_[j] - o.den_[j]);
      }
      return ring_->ideal().contains(a - b);
    }
    case RingKind::Finite: return index_ == o.index_;
    default: return q_ == o.q_;
  }
}

std::string RingElement::to_string() const {
  switch (ring_->kind()) {
    case RingKind::Finite: return std::to_string(index_);
    case RingKind::Affine: break;
    default: return q_.get_str();
  }
  bool plain = std::all_of(den_.begin(), den_.end(), [](auto a) { return a == 0; });
  if (plain) return num_.to_string();
  std::string den;
  for (std::size_t j = 0; j < den_.size(); ++j) {
    if (!den_[j]) continue;
    if (!den.empty()) den += "*";
    den += paren(ring_->inverted()[j]);
    if (den_[j] > 1) den += "^" + std::to_string(den_[j]);
  }
  std::string num = num_.to_string();
  return (is_atom(num) ? num : wrap(num)) + "/" + (is_atom(den) ? den : wrap(den));
}

// ------------------------------------------------------------------ parsing

RingElement parse_element(const Ring& ring, const std::string& text) {
  switch (ring->kind()) {
    case RingKind::Finite: {
      auto tokens = tokenize(text);
      TokenStream ts(tokens);
      bool negative = ts.accept_symbol('-');
      const Token& t = ts.expect(TokenKind::Integer, "an element index");
      if (!ts.at_end()) ts.fail("unexpected input after element");
      mpz_class k(t.text);
      if (k >= static_cast<unsigned long>(ring->table().size())) {
        throw ParseError("element index out of range", t.line, t.column);
      }
      RingElement e = RingElement::from_index(ring, static_cast<Elem>(k.get_ui()));
      return negative ? -e : e;
    }
    case RingKind::Integers:
    case RingKind::LocalIntegers: {
      const PolyRing* q = PolyRing::get(rational_field(), {});
      PolyFraction f = parse_fraction(text, q);
      mpq_class v = f.num.constant_value().rational() / f.den.constant_value().rational();
      try {
        return RingElement::from_rational(ring, v);
      } catch (const DomainError& e) {
        throw PreconditionError(e.what());
      }
    }
    case RingKind::Affine: break;
  }
  const PolyRing* pr = ring->poly_ring();
  PolyFraction f = parse_fraction(text, pr);
  const bool integer = ring->integer_coefficients();
  if (f.den.is_constant()) {
    Polynomial num = f.num.scale(f.den.constant_value().inverse());
    if (!integer || integral(num)) return RingElement::from_polynomial(ring, num);
  }
  // Try the denominator as a product of inverted elements times a scalar.
  Polynomial rest = f.den;
  std::vector<std::uint32_t> den(ring->inverted().size(), 0);
  for (std::size_t j = 0; j < den.size(); ++j) {
    if (ring->inverted()[j].is_constant()) continue;
    while (auto q = divide_exact(rest, ring->inverted()[j])) {
      rest = *q;
      ++den[j];
    }
  }
  if (rest.is_constant() && integer) {
    // Constant inverted integers absorb matching factors of the denominator.
    mpq_class c = rest.constant_value().rational();
    for (std::size_t j = 0; j < den.size(); ++j) {
      const Polynomial& d = ring->inverted()[j];
      if (!d.is_constant()) continue;
      mpz_class dv = abs(d.constant_value().rational().get_num());
      if (dv < 2) continue;
      while (c != 0 && c.get_num() % dv == 0) {
        c /= dv;
        ++den[j];
      }
    }
    rest = Polynomial::constant(pr, Scalar::from_rational(pr->field(), c));
  }
  if (rest.is_constant()) {
    Polynomial num = f.num.scale(rest.constant_value().inverse());
    if (!integer || integral(num)) return RingElement::from_polynomial(ring, num, den);
  }
  RingElement d = RingElement::from_polynomial(ring, f.den);
  UnitVerdict v = is_unit(d);
  if (v.truth != Truth::True) {
    throw PreconditionError("denominator " + f.den.to_string() + " is not a unit of " +
                            ring->description());
  }
  return RingElement::from_polynomial(ring, f.num) * v.witness->inverse;
}

bool is_zero(const RingElement& e) { return e.is_zero(); }

bool is_nilpotent(const RingElement& e) {
  if (e.ring()->kind() == RingKind::Finite) return e.ring()->table().is_nilpotent(e.index());
  return e.is_zero();
}

// ---------------------------------------------------------------- unit tests

namespace {

struct UnitIdeal {
  const PolyRing* big;
  std::vector<Polynomial> gens;
  std::string z;  // empty when nothing is inverted
};

// (P, g, 1 - z d) over the ring's field, or (P, g) when D is empty.
UnitIdeal unit_ideal(const Ring& ring, const Polynomial& g,
                     const std::vector<Polynomial>& relations) {
  UnitIdeal u;
  const PolyRing* pr = ring->poly_ring();
  if (ring->inverted().empty()) {
    u.big = pr;
    u.gens = relations;
    u.gens.push_back(g);
    return u;
  }
  u.z = fresh_variable(pr);
  u.big = union_ring(pr->field(), pr->variables(), {u.z});
  for (const auto& p : relations) u.gens.push_back(p.rename_into(u.big));
  u.gens.push_back(g.rename_into(u.big));
  u.gens.push_back(Polynomial::constant(u.big, 1) -
                   Polynomial::variable(u.big, u.z) * ring->inverted_product().rename_into(u.big));
  return u;
}

Polynomial to_prime_field(const Polynomial& f, const PolyRing* target) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    terms.push_back({t.monomial, Scalar::from_rational(target->field(), t.coeff.rational())});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

bool proper_mod_prime(const Ring& ring, const Polynomial& g, std::uint32_t p) {
  const PolyRing* pr = ring->poly_ring();
  const PolyRing* fp = PolyRing::get(prime_field(p), pr->variables());
  std::vector<Polynomial> rels;
  for (const auto& r : ring->input_relations()) rels.push_back(to_prime_field(r, fp));
  Polynomial gp = to_prime_field(g, fp);
  std::vector<Polynomial> gens = rels;
  gens.push_back(gp);
  if (!ring->inverted().empty()) {
    std::string z = fresh_variable(fp);
    const PolyRing* big = union_ring(fp->field(), fp->variables(), {z});
    for (auto& x : gens) x = x.rename_into(big);
    gens.push_back(Polynomial::constant(big, 1) -
                   Polynomial::variable(big, z) *
                       to_prime_field(ring->inverted_product(), fp).rename_into(big));
    return !GroebnerBasis::compute(gens, big).is_unit_ideal();
  }
  return !GroebnerBasis::compute(gens, fp).is_unit_ideal();
}

bool proper_over_field(const Ring& ring, const Polynomial& g) {
  UnitIdeal u = unit_ideal(ring, g, ring->ideal().basis());
  return !GroebnerBasis::compute(u.gens, u.big).is_unit_ideal();
}

// h with g*h = d^m mod P, from a lift of 1; nullopt when (P, g, 1-zd) is proper.
std::optional<std::pair<Polynomial, std::uint32_t>> unit_cofactor(const Ring& ring,
                                                                  const Polynomial& g) {
  UnitIdeal u = unit_ideal(ring, g, ring->ideal().basis());
  if (!GroebnerBasis::compute(u.gens, u.big).is_unit_ideal()) return std::nullopt;
  auto cof = lift(Polynomial::constant(u.big, 1), u.gens);
  if (!cof) throw Error("lift failed for a unit ideal");
  const PolyRing* pr = ring->poly_ring();
  const std::size_t gi = ring->ideal().basis().size();
  if (u.z.empty()) return std::make_pair((*cof)[gi].rename_into(pr), 0U);
  const std::size_t zi = static_cast<std::size_t>(u.big->index_of(u.z));
  std::uint32_t m = 0;
  for (std::size_t i = 0; i <= gi; ++i) m = std::max(m, (*cof)[i].degree_in(zi));
  auto parts = coefficients_in((*cof)[gi], zi);
  Polynomial d = ring->inverted_product();
  Polynomial h(pr);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    h += parts[k].rename_into(pr) * d.pow(m - static_cast<std::uint32_t>(k));
  }
  return std::make_pair(h, m);
}

std::vector<std::uint32_t> obstruction_primes(const Polynomial& h) {
  std::vector<std::uint32_t> out = {2, 3, 5, 7, 11, 13};
  for (const auto& t : h.terms()) {
    mpz_class den = t.coeff.rational().get_den();
    for (std::uint32_t p = 2; p < 1000 && den > 1; ++p) {
      if (den % p != 0) continue;
      while (den % p == 0) den /= p;
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

UnitVerdict affine_is_unit(const RingElement& e) {
  const Ring& ring = e.ring();
  const bool integer = ring->integer_coefficients();
  UnitVerdict v;
  Polynomial g = e.numerator();
  auto make_witness = [&](Polynomial h, std::uint32_t m) {
    const PolyRing* pr = ring->poly_ring();
    Polynomial d = ring->inverted_product();
    if (!integer) h = ring->ideal().normal_form(h);
    while (m > 0 && !d.is_constant()) {
      auto q = divide_exact(h, d);
      if (!q) break;
      h = integer ? *q : ring->ideal().normal_form(*q);
      --m;
    }
    Polynomial inv_num = h * e.denominator();
    std::vector<std::uint32_t> den(ring->inverted().size(), m);
    UnitWitness w{e, RingElement::from_polynomial(ring, inv_num, den), h.rename_into(pr), m};
    v.truth = Truth::True;
    v.witness = std::move(w);
  };
  if (!integer && g.is_constant() && !g.is_zero()) {
    make_witness(Polynomial::constant(ring->poly_ring(), g.constant_value().inverse()), 0);
    return v;
  }
  auto over_field = unit_cofactor(ring, g);
  if (!over_field) {
    v.truth = Truth::False;
    v.proof = NonUnitProof{e, NonUnitReason::Radical, 0};
    return v;
  }
  if (!integer) {
    make_witness(over_field->first, over_field->second);
    return v;
  }
  Polynomial reduced = ring->ideal().normal_form(over_field->first);
  // Multiplying by powers of d can clear denominators that d itself inverts.
  Polynomial dk = Polynomial::constant(ring->poly_ring(), 1);
  for (std::uint32_t k = 0; k <= 8; ++k) {
    for (const Polynomial& h : {over_field->first, reduced}) {
      if (integral(h * dk)) {
        make_witness(h * dk, over_field->second + k);
        return v;
      }
    }
    if (ring->inverted().empty()) break;
    dk = dk * ring->inverted_product();
  }
  for (std::uint32_t p : obstruction_primes(reduced)) {
    if (proper_mod_prime(ring, g, p)) {
      v.truth = Truth::False;
      v.proof = NonUnitProof{e, NonUnitReason::ModPrime, p};
      return v;
    }
  }
  v.truth = Truth::Unknown;
  return v;
}

}  // namespace

UnitVerdict is_unit(const RingElement& e) {
  const Ring& ring = e.ring();
  UnitVerdict v;
  switch (ring->kind()) {
    case RingKind::Affine: return affine_is_unit(e);
    case RingKind::Integers: {
      if (abs(e.rational()) == 1) {
        v.truth = Truth::True;
        v.witness = UnitWitness{e, e, {}, 0};
      } else {
        v.truth = Truth::False;
        v.proof = NonUnitProof{e, NonUnitReason::Arithmetic, 0};
      }
      return v;
    }
    case RingKind::LocalIntegers: {
      const mpq_class& q = e.rational();
      if (q != 0 && q.get_num() % ring->prime() != 0) {
        v.truth = Truth::True;
        v.witness = UnitWitness{e, RingElement::from_rational(ring, 1 / q), {}, 0};
      } else {
        v.truth = Truth::False;
        v.proof = NonUnitProof{e, NonUnitReason::Arithmetic, ring->prime()};
      }
      return v;
    }
    case RingKind::Finite: {
      const FiniteRing& t = ring->table();
      if (t.is_unit(e.index())) {
        v.truth = Truth::True;
        v.witness = UnitWitness{e, RingElement::from_index(ring, t.inverse(e.index())), {}, 0};
      } else {
        v.truth = Truth::False;
        v.proof = NonUnitProof{e, NonUnitReason::Table, 0};
      }
      return v;
    }
  }
  return v;
}

std::optional<RingElement> divide(const RingElement& w, const RingElement& q) {
  const Ring& ring = w.ring();
  if (q.ring() != ring) throw DomainError("division across rings");
  if (q.is_zero()) return std::nullopt;
  switch (ring->kind()) {
    case RingKind::Finite: return std::nullopt;
    case RingKind::Integers:
    case RingKind::LocalIntegers: {
      mpq_class c = w.rational() / q.rational();
      if (ring->kind() == RingKind::Integers && c.get_den() != 1) return std::nullopt;
      if (ring->kind() == RingKind::LocalIntegers && c.get_den() % ring->prime() == 0) {
        return std::nullopt;
      }
      return RingElement::from_rational(ring, c);
    }
    case RingKind::Affine: break;
  }
  const PolyRing* pr = ring->poly_ring();
  UnitIdeal u = unit_ideal(ring, q.numerator(), ring->ideal().basis());
  auto cof = lift(w.numerator().rename_into(u.big), u.gens);
  if (!cof) return std::nullopt;
  const std::size_t gi = ring->ideal().basis().size();
  const bool integer = ring->integer_coefficients();
  RingElement c = RingElement::zero(ring);
  if (u.z.empty()) {
    Polynomial h = (*cof)[gi].rename_into(pr);
    if (integer && !integral(h)) return std::nullopt;
    c = RingElement::from_polynomial(ring, h);
  } else {
    const std::size_t zi = static_cast<std::size_t>(u.big->index_of(u.z));
    auto parts = coefficients_in((*cof)[gi], zi);
    const auto m = static_cast<std::uint32_t>(parts.size() - 1);
    Polynomial d = ring->inverted_product();
    Polynomial h(pr);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      h += parts[k].rename_into(pr) * d.pow(m - static_cast<std::uint32_t>(k));
    }
    if (integer && !integral(h)) return std::nullopt;
    c = RingElement::from_polynomial(ring, h,
                                     std::vector<std::uint32_t>(ring->inverted().size(), m));
  }
  // w = a/D^alpha, q = b/D^beta and b*c = a, so w/q = c * D^beta / D^alpha.
  Polynomial dbeta = Polynomial::constant(pr, 1);
  for (std::size_t j = 0; j < q.den_exponents().size(); ++j) {
    dbeta = dbeta * ring->inverted()[j].pow(q.den_exponents()[j]);
  }
  RingElement out = c * RingElement::from_polynomial(ring, dbeta, w.den_exponents());
  if (!(q * out == w)) return std::nullopt;
  return out;
}

RingElement inverse(const RingElement& e) {
  UnitVerdict v = is_unit(e);
  if (v.truth != Truth::True) {
    throw PreconditionError(e.to_string() + " is not a unit of " + e.ring()->description());
  }
  return v.witness->inverse;
}

bool replay(const UnitWitness& w) {
  const Ring& ring = w.unit.ring();
  if (w.inverse.ring() != ring) return false;
  if (!(w.unit * w.inverse == RingElement::one(ring))) return false;
  if (ring->kind() != RingKind::Affine) return true;
  Polynomial lhs = w.unit.numerator() * w.cofactor.rename_into(ring->poly_ring()) -
                   ring->inverted_product().pow(w.exponent);
  if (!ring->ideal().contains(lhs)) return false;
  return !ring->integer_coefficients() || integral(w.cofactor);
}

bool replay(const NonUnitProof& p) {
  const RingElement& e = p.element;
  const Ring& ring = e.ring();
  switch (p.reason) {
    case NonUnitReason::Radical:
      return ring->kind() == RingKind::Affine && proper_over_field(ring, e.numerator());
    case NonUnitReason::ModPrime:
      return ring->kind() == RingKind::Affine && ring->integer_coefficients() &&
             is_prime_u32(p.prime) && integral(e.numerator()) &&
             proper_mod_prime(ring, e.numerator(), p.prime);
    case NonUnitReason::Arithmetic:
      if (ring->kind() == RingKind::Integers) return abs(e.rational()) != 1;
      if (ring->kind() == RingKind::LocalIntegers) {
        return e.rational() == 0 || e.rational().get_num() % ring->prime() == 0;
      }
      return false;
    case NonUnitReason::Table:
      return ring->kind() == RingKind::Finite && !ring->table().is_unit(e.index());
  }
  return false;
}

SumClassification classify_unit_sum(const RingElement& u, const RingElement& v) {
  UnitVerdict uv = is_unit(u);
  if (uv.truth != Truth::True) throw PreconditionError("u = " + u.to_string() + " is not a unit");
  UnitVerdict vv = is_unit(v);
  if (vv.truth != Truth::True) throw PreconditionError("v = " + v.to_string() + " is not a unit");
  SumClassification c;
  c.sum = u + v;
  if (is_nilpotent(c.sum)) {
    c.kind = SumClass::Nilpotent;
    return c;
  }
  UnitVerdict sv = is_unit(c.sum);
  switch (sv.truth) {
    case Truth::True:
      c.kind = SumClass::Unit;
      c.sum_witness = sv.witness;
      break;
    case Truth::False:
      c.kind = SumClass::Neither;
      c.counterexample = SumCounterexample{*uv.witness, *vv.witness, c.sum, *sv.proof};
      break;
    default: c.kind = SumClass::Unknown;
  }
  return c;
}

bool replay(const SumCounterexample& c) {
  return replay(c.u) && replay(c.v) && c.u.unit + c.v.unit == c.sum && !is_nilpotent(c.sum) &&
         c.sum_proof.element == c.sum && replay(c.sum_proof);
}

// ---------------------------------------------------------------------- maps

RingMap::RingMap(Ring source, Ring target, std::vector<RingElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (source_->kind() == RingKind::Affine) {
    if (images_.size() != source_->poly_ring()->arity()) {
      throw PreconditionError("ring map: expected one image per source variable");
    }
    if (!field_embeds(source_->field(), target_->field())) {
      throw DomainError("ring map: coefficient field does not embed");
    }
  }
  for (const auto& im : images_) {
    if (im.ring() != target_) throw DomainError("ring map: image outside the target");
  }
}

RingElement RingMap::apply(const Polynomial& f) const {
  const Polynomial g = f.rename_into(source_->poly_ring());
  std::vector<std::vector<RingElement>> powers(images_.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const RingElement& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RingElement::one(target_));
    while (cache.size() <= e) cache.push_back(cache.back() * images_[i]);
    return cache[e];
  };
  RingElement acc = RingElement::zero(target_);
  for (const auto& t : g.terms()) {
    RingElement term = RingElement::from_scalar(target_, embed_scalar(t.coeff, target_->field()));
    for (std::size_t i = 0; i < t.monomial.arity(); ++i) {
      if (t.monomial[i]) term = term * power(i, t.monomial[i]);
    }
    acc = acc + term;
  }
  return acc;
}

RingElement RingMap::operator()(const RingElement& e) const {
  if (e.ring() != source_) throw DomainError("ring map: element outside the source");
  if (source_->kind() != RingKind::Affine) {
    if (source_->kind() == RingKind::Finite) throw DomainError("ring map from a finite ring");
    return RingElement::from_rational(target_, e.rational());
  }
  RingElement out = apply(e.numerator());
  for (std::size_t j = 0; j < e.den_exponents().size(); ++j) {
    if (e.den_exponents()[j] == 0) continue;
    out = out * inverse(apply(source_->inverted()[j])).pow(e.den_exponents()[j]);
  }
  return out;
}

bool RingMap::well_defined() const {
  if (source_->kind() != RingKind::Affine) return true;
  for (const auto& r : source_->input_relations()) {
    if (!apply(r).is_zero()) return false;
  }
  for (const auto& d : source_->inverted()) {
    if (is_unit(apply(d)).truth != Truth::True) return false;
  }
  return true;
}

}  // namespace unital
