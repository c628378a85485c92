#include "unital/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "unital/error.hpp"

namespace unital {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t arity, std::size_t index,
                            std::uint32_t power) {
  Monomial m(arity);
  m.exps_[index] = power;
  m.degree_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ -= other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<std::uint32_t> e(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    e[i] = std::max(exps_[i], other.exps_[i]);
  }
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] && other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::pow(std::uint32_t n) const {
  Monomial r(*this);
  for (auto& e : r.exps_) e *= n;
  r.degree_ *= n;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return h;
}

// ----------------------------------------------------------- MonomialOrder

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                  std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case OrderKind::Lex:
      for (std::size_t i = 0; i < a.arity(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case OrderKind::Grevlex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = a.arity(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      }
      return 0;
    case OrderKind::Block: {
      std::size_t s = std::min(split, a.arity());
      if (int c = grevlex_range(a, b, 0, s); c != 0) return c;
      return grevlex_range(a, b, s, a.arity());
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case OrderKind::Lex:
      return "lex";
    case OrderKind::Grevlex:
      return "grevlex";
    case OrderKind::Block:
      return "block(" + std::to_string(split) + ")";
  }
  return {};
}

// ---------------------------------------------------------------- PolyRing

namespace {

struct RingKey {
  const FieldDesc* field;
  std::vector<std::string> vars;
  OrderKind kind;
  std::size_t split;
  bool operator<(const RingKey& o) const {
    return std::tie(field, vars, kind, split) <
           std::tie(o.field, o.vars, o.kind, o.split);
  }
};

}  // namespace

const PolyRing* PolyRing::get(const FieldDesc* field,
                              const std::vector<std::string>& vars,
                              MonomialOrder order) {
  static std::mutex mutex;
  static std::map<RingKey, std::unique_ptr<PolyRing>> rings;
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) {
      throw PreconditionError("duplicate variable '" + v + "'");
    }
    if (field->variable_index(v) >= 0) {
      throw PreconditionError("variable '" + v +
                              "' is also a generator of " + field->to_string());
    }
  }
  if (order.kind != OrderKind::Block) order.split = 0;
  RingKey key{field, vars, order.kind, order.split};
  std::lock_guard lock(mutex);
  auto it = rings.find(key);
  if (it != rings.end()) return it->second.get();
  auto ring = std::unique_ptr<PolyRing>(new PolyRing());
  ring->field_ = field;
  ring->vars_ = vars;
  ring->order_ = order;
  const PolyRing* raw = ring.get();
  rings.emplace(key, std::move(ring));
  return raw;
}

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const PolyRing* PolyRing::with_order(MonomialOrder order) const {
  return get(field_, vars_, order);
}

std::string PolyRing::to_string() const {
  std::string s = field_->to_string() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ",";
    s += vars_[i];
  }
  return s + "]";
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const PolyRing* ring, const Scalar& c) {
  Polynomial p(ring);
  Scalar v = embed_scalar(c, ring->field());
  if (!v.is_zero()) p.terms_.push_back({Monomial(ring->arity()), v});
  return p;
}

Polynomial Polynomial::constant(const PolyRing* ring, long long c) {
  return constant(ring, Scalar::from_int(ring->field(), c));
}

Polynomial Polynomial::variable(const PolyRing* ring, std::size_t index) {
  Polynomial p(ring);
  p.terms_.push_back({Monomial::variable(ring->arity(), index),
                      Scalar::one(ring->field())});
  return p;
}

Polynomial Polynomial::variable(const PolyRing* ring, const std::string& name) {
  int i = ring->index_of(name);
  if (i < 0) throw DomainError("no variable '" + name + "' in " + ring->to_string());
  return variable(ring, static_cast<std::size_t>(i));
}

Polynomial Polynomial::monomial(const PolyRing* ring, const Monomial& m,
                                const Scalar& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(const PolyRing* ring, std::vector<Term> terms) {
  const MonomialOrder& ord = ring->order();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ord.compare(a.monomial, b.monomial) > 0;
  });
  Polynomial p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) {
        p.terms_.pop_back();
      }
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.is_one() &&
         terms_[0].coeff.is_one();
}

Scalar Polynomial::constant_value() const {
  if (terms_.empty()) return Scalar::zero(field());
  if (!is_constant()) throw DomainError("not a constant: " + to_string());
  return terms_[0].coeff;
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return d;
}

std::vector<std::size_t> Polynomial::support_variables() const {
  std::vector<std::size_t> out;
  if (!ring_) return out;
  for (std::size_t i = 0; i < ring_->arity(); ++i) {
    if (degree_in(i) > 0) out.push_back(i);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring() != b.ring()) {
    throw DomainError("polynomial ring mismatch: " +
                      (a.ring() ? a.ring()->to_string() : "<none>") + " vs " +
                      (b.ring() ? b.ring()->to_string() : "<none>"));
  }
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_same_ring(*this, other);
  const MonomialOrder& ord = ring_->order();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    int c = ord.compare(terms_[i].monomial, other.terms_[j].monomial);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(other.terms_[j++]);
    } else {
      Scalar s = terms_[i].coeff + other.terms_[j].coeff;
      if (!s.is_zero()) r.terms_.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j) r.terms_.push_back(other.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + (-other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(*this, other);
  if (terms_.empty() || other.terms_.empty()) return Polynomial(ring_);
  if (terms_.size() == 1) {
    return other.mul_term(terms_[0].monomial, terms_[0].coeff);
  }
  if (other.terms_.size() == 1) {
    return mul_term(other.terms_[0].monomial, other.terms_[0].coeff);
  }
  std::vector<Term> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      prod.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
    }
  }
  return from_terms(ring_, std::move(prod));
}

Polynomial Polynomial::scale(const Scalar& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  if (c.is_one()) return *this;
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    r.terms_.push_back({t.monomial * m, t.coeff * c});
  }
  return r;
}

Polynomial Polynomial::sub_mul_term(const Scalar& c, const Monomial& m,
                                    const Polynomial& g) const {
  require_same_ring(*this, g);
  const MonomialOrder& ord = ring_->order();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  const Scalar neg = -c;
  while (i < terms_.size() && j < g.terms_.size()) {
    Monomial gm = g.terms_[j].monomial * m;
    int cmp = ord.compare(terms_[i].monomial, gm);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({std::move(gm), g.terms_[j++].coeff * neg});
    } else {
      Scalar s = terms_[i].coeff + g.terms_[j].coeff * neg;
      if (!s.is_zero()) r.terms_.push_back({std::move(gm), std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) {
    r.terms_.push_back({g.terms_[j].monomial * m, g.terms_[j].coeff * neg});
  }
  return r;
}

Polynomial Polynomial::pow(std::uint32_t n) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

Polynomial Polynomial::tail() const {
  Polynomial r(ring_);
  if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scale(leading_coeff().inverse());
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  if (terms_.empty()) return true;
  if (ring_ != other.ring_) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].monomial != other.terms_[i].monomial ||
        terms_[i].coeff != other.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Polynomial Polynomial::with_ring(const PolyRing* target) const {
  if (target == ring_) return *this;
  if (target->field() != ring_->field() ||
      target->variables() != ring_->variables()) {
    throw DomainError("with_ring: incompatible ring " + target->to_string());
  }
  return from_terms(target, terms_);
}

Polynomial Polynomial::rename_into(const PolyRing* target) const {
  if (target == ring_) return *this;
  if (ring_ && target->field() == ring_->field() &&
      target->variables() == ring_->variables()) {
    return with_ring(target);
  }
  const FieldDesc* tf = target->field();
  // Each source variable becomes a target variable or a target field
  // generator.
  std::vector<int> var_map;
  std::vector<int> gen_map;
  if (ring_) {
    for (const auto& v : ring_->variables()) {
      var_map.push_back(target->index_of(v));
      gen_map.push_back(tf->variable_index(v));
    }
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->arity());
    std::vector<std::uint32_t> e(target->arity(), 0);
    Scalar c = embed_scalar(t.coeff, tf);
    for (std::size_t i = 0; i < t.monomial.arity(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (var_map[i] >= 0) {
        e[static_cast<std::size_t>(var_map[i])] += t.monomial[i];
      } else if (gen_map[i] >= 0) {
        c *= Scalar::generator(tf, static_cast<std::size_t>(gen_map[i]))
                 .pow(t.monomial[i]);
      } else {
        throw DomainError("variable '" + ring_->variables()[i] +
                          "' has no image in " + target->to_string());
      }
    }
    out.push_back({Monomial(std::move(e)), std::move(c)});
  }
  return from_terms(target, std::move(out));
}

namespace {

std::string monomial_text(const PolyRing* ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring->variables()[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

std::string term_text(const PolyRing* ring, const Term& t) {
  const Scalar& c = t.coeff;
  std::string mono = monomial_text(ring, t.monomial);
  if (c.prints_atomic()) {
    Scalar k = c.prime_constant();
    if (mono.empty()) return k.to_string();
    if (k.is_one()) return mono;
    if ((-k).is_one()) return "-" + mono;
    return k.to_string() + "*" + mono;
  }
  std::string cs = c.to_string();
  if (cs.rfind("(-", 0) == 0) {
    std::string pos = (-c).to_string();
    if (pos.rfind("(-", 0) != 0) cs = "-" + pos;
  }
  if (mono.empty()) return cs;
  return cs + "*" + mono;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    std::string t = term_text(ring_, terms_[i]);
    if (i > 0 && t.front() != '-') s += "+";
    s += t;
  }
  return s;
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0;
  for (const auto& t : terms_) {
    h = h * 1315423911ULL + t.monomial.hash();
    h ^= t.coeff.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ------------------------------------------------------- division and gcd

std::optional<Polynomial> divide_exact(const Polynomial& a,
                                       const Polynomial& b) {
  require_same_ring(a, b);
  if (b.is_zero()) throw DivisionByZero("divide_exact by zero polynomial");
  if (a.is_zero()) return Polynomial(a.ring());
  const Monomial& lm = b.leading_monomial();
  const Scalar lc_inv = b.leading_coeff().inverse();
  Polynomial r = a;
  std::vector<Term> q;
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!lm.divides(lt.monomial)) return std::nullopt;
    Monomial m = lt.monomial / lm;
    Scalar c = lt.coeff * lc_inv;
    q.push_back({m, c});
    r = r.sub_mul_term(c, m, b);
  }
  return Polynomial::from_terms(a.ring(), std::move(q));
}

std::vector<Polynomial> coefficients_in(const Polynomial& f, std::size_t var) {
  std::vector<std::vector<Term>> buckets(f.degree_in(var) + 1);
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> e = t.monomial.exponents();
    std::uint32_t k = e[var];
    e[var] = 0;
    buckets[k].push_back({Monomial(std::move(e)), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(f.ring(), std::move(b)));
  return out;
}

namespace {

int max_support_var(const Polynomial& a) {
  int best = -1;
  for (const auto& t : a.terms()) {
    for (std::size_t i = t.monomial.arity(); i-- > 0;) {
      if (t.monomial[i]) {
        best = std::max(best, static_cast<int>(i));
        break;
      }
    }
  }
  return best;
}

Polynomial content_in(const Polynomial& f, std::size_t var);

// Strips the scalar content: over Q an integer-primitive multiple with
// positive leading coefficient, otherwise the monic multiple.
Polynomial scalar_primitive(const Polynomial& f) {
  if (f.is_zero()) return f;
  if (f.field()->kind() != FieldKind::Rational) return f.monic();
  mpz_class den = 1, num = 0;
  for (const auto& t : f.terms()) {
    const mpq_class& q = t.coeff.rational();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
  }
  mpq_class factor(den, num);
  factor.canonicalize();
  if (f.leading_coeff().rational() < 0) factor = -factor;
  return f.scale(Scalar::from_rational(f.field(), factor));
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) {
    return Polynomial::constant(a.ring(), 1);
  }
  int va = max_support_var(a), vb = max_support_var(b);
  auto v = static_cast<std::size_t>(std::max(va, vb));
  if (a.degree_in(v) == 0) return gcd_rec(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd_rec(content_in(a, v), b);

  Polynomial ca = content_in(a, v), cb = content_in(b, v);
  Polynomial c = gcd_rec(ca, cb);
  Polynomial pa = scalar_primitive(*divide_exact(a, ca));
  Polynomial pb = scalar_primitive(*divide_exact(b, cb));
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  const PolyRing* ring = a.ring();
  const std::size_t n = ring->arity();
  // Primitive polynomial remainder sequence in v.
  while (true) {
    std::uint32_t db = pb.degree_in(v);
    Polynomial lcb = coefficients_in(pb, v)[db];
    Polynomial r = pa;
    while (!r.is_zero() && r.degree_in(v) >= db) {
      std::uint32_t dr = r.degree_in(v);
      Polynomial lcr = coefficients_in(r, v)[dr];
      Polynomial shift = Polynomial::monomial(
          ring, Monomial::variable(n, v, dr - db), Scalar::one(ring->field()));
      r = scalar_primitive(lcb * r - lcr * shift * pb);
    }
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Polynomial::constant(ring, 1);
      break;
    }
    pa = pb;
    pb = scalar_primitive(*divide_exact(r, content_in(r, v)));
  }
  if (!pb.is_constant()) pb = *divide_exact(pb, content_in(pb, v));
  return (c * pb).monic();
}

Polynomial content_in(const Polynomial& f, std::size_t var) {
  Polynomial g(f.ring());
  for (const auto& c : coefficients_in(f, var)) {
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  return gcd_rec(a, b);
}

// ---------------------------------------------------------- substitution

Polynomial substitute(const Polynomial& f,
                      const std::vector<Polynomial>& images) {
  if (images.size() != f.ring()->arity()) {
    throw PreconditionError("substitute: expected " +
                            std::to_string(f.ring()->arity()) + " images, got " +
                            std::to_string(images.size()));
  }
  if (images.empty()) {
    throw PreconditionError("substitute: no target ring for a constant");
  }
  const PolyRing* target = images.front().ring();
  for (const auto& im : images) {
    if (im.ring() != target) throw DomainError("substitute: images in different rings");
  }
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t var, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, embed_scalar(t.coeff, target->field()));
    for (std::size_t i = 0; i < t.monomial.arity() && !term.is_zero(); ++i) {
      if (t.monomial[i]) term = term * power(i, t.monomial[i]);
    }
    result += term;
  }
  return result;
}

Scalar substitute(const Polynomial& f, const std::vector<Scalar>& images) {
  if (images.size() != f.ring()->arity()) {
    throw PreconditionError("substitute: expected " +
                            std::to_string(f.ring()->arity()) + " images, got " +
                            std::to_string(images.size()));
  }
  if (images.empty()) return f.constant_value();
  const FieldDesc* target = images.front().field();
  for (const auto& im : images) {
    if (im.field() != target) throw DomainError("substitute: images in different fields");
  }
  Scalar result = Scalar::zero(target);
  for (const auto& t : f.terms()) {
    Scalar term = embed_scalar(t.coeff, target);
    for (std::size_t i = 0; i < t.monomial.arity(); ++i) {
      if (t.monomial[i]) term *= images[i].pow(t.monomial[i]);
    }
    result += term;
  }
  return result;
}

// --------------------------------------------------------------- grading

std::map<long long, Polynomial> grading_decompose(
    const Polynomial& f, const std::vector<long long>& weights) {
  if (weights.size() != f.ring()->arity()) {
    throw PreconditionError("grading_decompose: weight vector has " +
                            std::to_string(weights.size()) + " entries, ring has " +
                            std::to_string(f.ring()->arity()) + " variables");
  }
  std::map<long long, std::vector<Term>> buckets;
  for (const auto& t : f.terms()) {
    long long d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      d += weights[i] * static_cast<long long>(t.monomial[i]);
    }
    buckets[d].push_back(t);
  }
  std::map<long long, Polynomial> out;
  for (auto& [d, terms] : buckets) {
    out.emplace(d, Polynomial::from_terms(f.ring(), std::move(terms)));
  }
  return out;
}

bool is_weighted_homogeneous(const Polynomial& f,
                             const std::vector<long long>& weights) {
  return grading_decompose(f, weights).size() <= 1;
}

}  // namespace unital
