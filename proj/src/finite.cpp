#include "unital/finite.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "unital/error.hpp"

namespace unital {

using Bitmap = std::vector<bool>;

FiniteRing::FiniteRing(std::string name, std::size_t size, std::vector<Elem> add,
                       std::vector<Elem> mul)
    : FiniteRing(Trusted{}, std::move(name), size, std::move(add), std::move(mul)) {
  std::string failure = axiom_failure();
  if (!failure.empty()) throw PreconditionError("finite ring " + name_ + ": " + failure);
}

FiniteRing::FiniteRing(Trusted, std::string name, std::size_t size, std::vector<Elem> add,
                       std::vector<Elem> mul)
    : name_(std::move(name)), size_(size), add_(std::move(add)), mul_(std::move(mul)) {
  check_tables();
  derive();
}

std::shared_ptr<const FiniteRing> FiniteRing::trusted(std::string name, std::size_t size,
                                                      std::vector<Elem> add,
                                                      std::vector<Elem> mul) {
  return std::shared_ptr<const FiniteRing>(
      new FiniteRing(Trusted{}, std::move(name), size, std::move(add), std::move(mul)));
}

// Shape, identities and commutativity: quadratic, so always run.
void FiniteRing::check_tables() {
  if (size_ == 0 || size_ >= 0xFFFF || add_.size() != size_ * size_ ||
      mul_.size() != size_ * size_) {
    throw PreconditionError("finite ring " + name_ + ": malformed tables");
  }
  const std::size_t n = size_;
  auto fail = [&](const std::string& what) {
    throw PreconditionError("finite ring " + name_ + ": " + what);
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (add_[a * n] != a) fail("0 is not an additive identity");
    for (std::size_t b = 0; b < n; ++b) {
      if (add_[a * n + b] >= n || mul_[a * n + b] >= n) fail("table entry out of range");
      if (add_[a * n + b] != add_[b * n + a]) fail("addition not commutative");
      if (mul_[a * n + b] != mul_[b * n + a]) fail("multiplication not commutative");
    }
  }
  bool found_one = false;
  for (std::size_t e = 0; e < n && !found_one; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = mul_[e * n + a] == a;
    if (ok) {
      one_ = static_cast<Elem>(e);
      found_one = true;
    }
  }
  if (!found_one) fail("no multiplicative identity");
}

std::string FiniteRing::axiom_failure() const {
  const std::size_t n = size_;
  for (std::size_t a = 0; a < n; ++a) {
    const Elem* ra = &add_[a * n];
    const Elem* ma = &mul_[a * n];
    for (std::size_t b = 0; b < n; ++b) {
      const Elem ab = ra[b];
      const Elem mab = ma[b];
      const Elem* rab = &add_[ab * n];
      const Elem* mmab = &mul_[mab * n];
      const Elem* rb = &add_[b * n];
      const Elem* mb = &mul_[b * n];
      for (std::size_t c = 0; c < n; ++c) {
        if (rab[c] != ra[rb[c]]) return "addition not associative";
        if (mmab[c] != ma[mb[c]]) return "multiplication not associative";
        if (ma[rb[c]] != add_[mab * n + ma[c]]) return "not distributive";
      }
    }
  }
  return {};
}

bool FiniteRing::satisfies_axioms() const { return axiom_failure().empty(); }

void FiniteRing::derive() {
  const std::size_t n = size_;
  neg_.assign(n, kNone);
  inverse_.assign(n, kNone);
  nilpotent_.assign(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (add_[a * n + b] == 0) neg_[a] = static_cast<Elem>(b);
      if (mul_[a * n + b] == one_) inverse_[a] = static_cast<Elem>(b);
    }
    if (neg_[a] == kNone) {
      throw PreconditionError("finite ring " + name_ + ": missing additive inverse");
    }
    Elem p = static_cast<Elem>(a);
    for (std::size_t k = 0; k < n && p != 0; ++k) p = mul_[p * n + a];
    nilpotent_[a] = p == 0;
    if (inverse_[a] != kNone) units_.push_back(static_cast<Elem>(a));
    if (nilpotent_[a]) nilpotent_list_.push_back(static_cast<Elem>(a));
  }
}

bool FiniteRing::unit_additive() const {
  for (Elem u : units_) {
    for (Elem v : units_) {
      if (v < u) continue;
      Elem s = add(u, v);
      if (!is_unit(s) && !is_nilpotent(s)) return false;
    }
  }
  return true;
}

bool FiniteRing::nilradical_prime() const {
  if (size_ == 1) return false;
  for (std::size_t a = 0; a < size_; ++a) {
    if (nilpotent_[a]) continue;
    for (std::size_t b = 0; b < size_; ++b) {
      if (!nilpotent_[b] && nilpotent_[mul_[a * size_ + b]]) return false;
    }
  }
  return true;
}

std::string FiniteRing::element_name(Elem a) const { return std::to_string(a); }

namespace {

std::vector<Elem> table(std::size_t n, auto&& op) {
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>(op(a, b));
  }
  return t;
}

std::string poly_name(std::uint32_t n, const std::vector<std::uint32_t>& coeffs) {
  std::size_t d = coeffs.size();
  std::string s = "x^" + std::to_string(d);
  for (std::size_t i = d; i-- > 0;) {
    if (coeffs[i] == 0) continue;
    s += "+" + std::to_string(coeffs[i]);
    if (i >= 1) s += "*x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return "Z/" + std::to_string(n) + "[x]/(" + s + ")";
}

}  // namespace

FiniteRingPtr FiniteRing::integers_mod(std::uint32_t n) {
  if (n < 2) throw PreconditionError("Z/n needs n >= 2");
  return trusted(
      "Z/" + std::to_string(n), n, table(n, [&](auto a, auto b) { return (a + b) % n; }),
      table(n, [&](auto a, auto b) { return (a * b) % n; }));
}

FiniteRingPtr FiniteRing::product(const FiniteRing& a, const FiniteRing& b) {
  const std::size_t nb = b.size(), n = a.size() * nb;
  auto split = [&](std::size_t x) { return std::pair<Elem, Elem>(x / nb, x % nb); };
  return trusted(
      a.name() + " x " + b.name(), n,
      table(n,
            [&](auto x, auto y) {
              auto [x1, x2] = split(x);
              auto [y1, y2] = split(y);
              return a.add(x1, y1) * nb + b.add(x2, y2);
            }),
      table(n, [&](auto x, auto y) {
        auto [x1, x2] = split(x);
        auto [y1, y2] = split(y);
        return a.mul(x1, y1) * nb + b.mul(x2, y2);
      }));
}

FiniteRingPtr FiniteRing::polynomial_quotient(std::uint32_t n,
                                              const std::vector<std::uint32_t>& coeffs) {
  const std::size_t d = coeffs.size();
  if (d == 0) throw PreconditionError("polynomial quotient needs deg f >= 1");
  std::size_t size = 1;
  for (std::size_t i = 0; i < d; ++i) size *= n;
  auto decode = [&](std::size_t x) {
    std::vector<std::uint64_t> c(d);
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = x % n;
      x /= n;
    }
    return c;
  };
  auto encode = [&](const std::vector<std::uint64_t>& c) {
    std::size_t x = 0;
    for (std::size_t i = d; i-- > 0;) x = x * n + c[i] % n;
    return x;
  };
  auto add = [&](auto x, auto y) {
    auto a = decode(x), b = decode(y);
    for (std::size_t i = 0; i < d; ++i) a[i] = (a[i] + b[i]) % n;
    return encode(a);
  };
  auto mul = [&](auto x, auto y) {
    auto a = decode(x), b = decode(y);
    std::vector<std::uint64_t> p(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) p[i + j] = (p[i + j] + a[i] * b[j]) % n;
    }
    // x^d = -sum coeffs[i] x^i
    for (std::size_t k = 2 * d - 1; k >= d; --k) {
      std::uint64_t c = p[k];
      p[k] = 0;
      for (std::size_t i = 0; i < d; ++i) {
        p[k - d + i] = (p[k - d + i] + (n - coeffs[i] % n) * c) % n;
      }
    }
    p.resize(d);
    return encode(p);
  };
  return trusted(poly_name(n, coeffs), size, table(size, add),
                                      table(size, mul));
}

namespace {

// Coset representatives of an additive subgroup: rep[x] = smallest member of
// x + I; classes lists the distinct representatives in increasing order.
struct Cosets {
  std::vector<Elem> rep;
  std::vector<Elem> classes;
  std::vector<Elem> index;  // rep -> class number
};

Cosets cosets(const FiniteRing& r, const Bitmap& ideal) {
  Cosets c;
  const std::size_t n = r.size();
  c.rep.assign(n, 0xFFFF);
  c.index.assign(n, 0xFFFF);
  std::vector<Elem> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (ideal[i]) members.push_back(static_cast<Elem>(i));
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (c.rep[x] != 0xFFFF) continue;
    c.index[x] = static_cast<Elem>(c.classes.size());
    c.classes.push_back(static_cast<Elem>(x));
    for (Elem m : members) c.rep[r.add(static_cast<Elem>(x), m)] = static_cast<Elem>(x);
  }
  return c;
}

Bitmap principal(const FiniteRing& r, Elem a) {
  Bitmap b(r.size(), false);
  for (std::size_t x = 0; x < r.size(); ++x) b[r.mul(static_cast<Elem>(x), a)] = true;
  return b;
}

Bitmap ideal_sum(const FiniteRing& r, const Bitmap& a, const Bitmap& b) {
  Bitmap s(r.size(), false);
  std::vector<Elem> bs;
  for (std::size_t y = 0; y < r.size(); ++y) {
    if (b[y]) bs.push_back(static_cast<Elem>(y));
  }
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (!a[x]) continue;
    for (Elem y : bs) s[r.add(static_cast<Elem>(x), y)] = true;
  }
  return s;
}

bool subset(const Bitmap& a, const Bitmap& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

std::size_t count(const Bitmap& a) { return static_cast<std::size_t>(std::count(a.begin(), a.end(), true)); }

}  // namespace

FiniteRingPtr FiniteRing::quotient(const FiniteRing& r, const Bitmap& ideal) {
  bool is_ideal = ideal.size() == r.size() && ideal[0];
  for (std::size_t a = 0; a < r.size() && is_ideal; ++a) {
    if (!ideal[a]) continue;
    for (std::size_t b = 0; b < r.size() && is_ideal; ++b) {
      is_ideal = ideal[r.mul(static_cast<Elem>(a), static_cast<Elem>(b))] &&
                 (!ideal[b] || ideal[r.add(static_cast<Elem>(a), static_cast<Elem>(b))]);
    }
  }
  if (!is_ideal) throw PreconditionError(r.name() + ": quotient by a non-ideal");
  Cosets c = cosets(r, ideal);
  const std::size_t m = c.classes.size();
  auto cls = [&](Elem x) { return c.index[c.rep[x]]; };
  return trusted(
      r.name() + "/I", m,
      table(m, [&](auto a, auto b) { return cls(r.add(c.classes[a], c.classes[b])); }),
      table(m, [&](auto a, auto b) { return cls(r.mul(c.classes[a], c.classes[b])); }));
}

FiniteRingPtr FiniteRing::idealization(const FiniteRing& a, Elem j) {
  Cosets c = cosets(a, principal(a, j));
  const std::size_t m = c.classes.size();
  const std::size_t n = a.size() * m;
  auto cls = [&](Elem x) { return c.index[c.rep[x]]; };
  auto split = [&](std::size_t x) { return std::pair<Elem, Elem>(x / m, x % m); };
  return trusted(
      a.name() + "(+)" + a.name() + "/(" + std::to_string(j) + ")", n,
      table(n,
            [&](auto x, auto y) {
              auto [a1, m1] = split(x);
              auto [a2, m2] = split(y);
              return a.add(a1, a2) * m + cls(a.add(c.classes[m1], c.classes[m2]));
            }),
      table(n, [&](auto x, auto y) {
        auto [a1, m1] = split(x);
        auto [a2, m2] = split(y);
        Elem mod = a.add(a.mul(a1, c.classes[m2]), a.mul(a2, c.classes[m1]));
        return a.mul(a1, a2) * m + cls(mod);
      }));
}

// ------------------------------------------------------------------ ideals

std::vector<Bitmap> enumerate_ideals(const FiniteRing& r) {
  std::set<Bitmap> seen;
  std::vector<Bitmap> principals;
  for (std::size_t a = 0; a < r.size(); ++a) {
    Bitmap p = principal(r, static_cast<Elem>(a));
    if (seen.insert(p).second) principals.push_back(p);
  }
  std::vector<Bitmap> all(seen.begin(), seen.end());
  // Close under sums with principal ideals; every ideal is finitely generated.
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& p : principals) {
      if (subset(p, all[i])) continue;
      Bitmap s = ideal_sum(r, all[i], p);
      if (seen.insert(s).second) all.push_back(s);
    }
  }
  return std::vector<Bitmap>(seen.begin(), seen.end());
}

namespace {

std::vector<Bitmap> maximal_ideals(const FiniteRing& r, const std::vector<Bitmap>& ideals) {
  std::vector<Bitmap> proper;
  for (const auto& i : ideals) {
    if (!i[r.one()]) proper.push_back(i);
  }
  std::vector<Bitmap> out;
  for (const auto& i : proper) {
    bool maximal = true;
    for (const auto& j : proper) {
      if (&i != &j && i != j && subset(i, j)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<bool> jacobson_radical(const FiniteRing& r) {
  auto maxes = maximal_ideals(r, enumerate_ideals(r));
  Bitmap jac(r.size(), true);
  for (const auto& m : maxes) {
    for (std::size_t i = 0; i < r.size(); ++i) jac[i] = jac[i] && m[i];
  }
  return jac;
}

namespace {

// Closure of a generating set under +, *, containing 0 and 1.
Bitmap ring_closure(const FiniteRing& r, Bitmap set) {
  set[0] = true;
  set[r.one()] = true;
  std::vector<Elem> members;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (set[i]) members.push_back(static_cast<Elem>(i));
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Elem z : {r.add(members[i], members[j]), r.mul(members[i], members[j])}) {
        if (!set[z]) {
          set[z] = true;
          members.push_back(z);
        }
      }
    }
  }
  return set;
}

// Unit-additivity of a subring T of r, intrinsically.
bool subring_unit_additive(const FiniteRing& r, const Bitmap& t) {
  std::vector<Elem> units;
  for (std::size_t a = 0; a < r.size(); ++a) {
    if (t[a] && r.is_unit(static_cast<Elem>(a)) && t[r.inverse(static_cast<Elem>(a))]) {
      units.push_back(static_cast<Elem>(a));
    }
  }
  auto unit_in_t = [&](Elem s) { return r.is_unit(s) && t[r.inverse(s)]; };
  for (Elem u : units) {
    for (Elem v : units) {
      Elem s = r.add(u, v);
      if (!unit_in_t(s) && !r.is_nilpotent(s)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Bitmap> enumerate_subrings(const FiniteRing& r) {
  std::set<Bitmap> seen;
  std::vector<Bitmap> queue;
  Bitmap base = ring_closure(r, Bitmap(r.size(), false));
  seen.insert(base);
  queue.push_back(base);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (queue[i][a]) continue;
      Bitmap next = queue[i];
      next[a] = true;
      next = ring_closure(r, next);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return std::vector<Bitmap>(seen.begin(), seen.end());
}

// ------------------------------------------------------------------ audits

bool EquivalenceReport::consistent() const {
  bool same = c1_unit_plus_one == c2_pairwise && c2_pairwise == c3_subring &&
              c3_subring == c4_local_subring && c4_local_subring == c5_finite_sums;
  if (reduced) same = same && c6_field == c1_unit_plus_one;
  return same;
}

EquivalenceReport audit_equivalences(const FiniteRing& r) {
  EquivalenceReport rep;
  const std::size_t n = r.size();
  auto good = [&](Elem s) { return r.is_unit(s) || r.is_nilpotent(s); };
  rep.c1_unit_plus_one = true;
  for (Elem u : r.units()) rep.c1_unit_plus_one = rep.c1_unit_plus_one && good(r.add(u, r.one()));
  rep.c2_pairwise = r.unit_additive();

  Bitmap t(n, false);
  for (std::size_t a = 0; a < n; ++a) t[a] = good(static_cast<Elem>(a));
  bool closed = t[0] && t[r.one()];
  for (std::size_t a = 0; a < n && closed; ++a) {
    if (!t[a]) continue;
    closed = t[r.neg(static_cast<Elem>(a))];
    for (std::size_t b = 0; b < n && closed; ++b) {
      if (t[b]) {
        closed = t[r.add(static_cast<Elem>(a), static_cast<Elem>(b))] &&
                 t[r.mul(static_cast<Elem>(a), static_cast<Elem>(b))];
      }
    }
  }
  rep.c3_subring = closed;
  // Local and zero-dimensional: the non-units of T (here the nilpotents)
  // form an ideal of T and every element is a unit or nilpotent.
  bool local = closed;
  if (local) {
    for (Elem a : r.nilpotents()) {
      for (std::size_t b = 0; b < n && local; ++b) {
        if (!t[b]) continue;
        local = r.is_nilpotent(r.mul(a, static_cast<Elem>(b)));
        for (Elem c : r.nilpotents()) local = local && r.is_nilpotent(r.add(a, c));
      }
    }
  }
  rep.c4_local_subring = local;

  // S_1 = U, S_{k+1} = S_k + U, until stable or k = |R|.
  Bitmap sums(n, false);
  for (Elem u : r.units()) sums[u] = true;
  bool all_good = true;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      if (sums[a] && !good(static_cast<Elem>(a))) all_good = false;
    }
    Bitmap next(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (!sums[a]) continue;
      for (Elem u : r.units()) next[r.add(static_cast<Elem>(a), u)] = true;
    }
    if (next == sums) break;
    // Sets of k-fold sums can cycle; stop once a set repeats as well.
    sums = next;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (sums[a] && !good(static_cast<Elem>(a))) all_good = false;
  }
  rep.c5_finite_sums = all_good;

  rep.reduced = r.nilpotents().size() == 1;
  if (rep.reduced) {
    bool field = true;
    for (Elem u : r.units()) {
      for (Elem v : r.units()) {
        Elem s = r.add(u, v);
        if (s != 0 && !r.is_unit(s)) field = false;
      }
    }
    rep.c6_field = field;
  }
  return rep;
}

bool audit_quotient_nil(const FiniteRing& r, const Bitmap& ideal) {
  for (std::size_t a = 0; a < r.size(); ++a) {
    if (ideal[a] && !r.is_nilpotent(static_cast<Elem>(a))) {
      throw PreconditionError("audit_quotient_nil: ideal is not nil");
    }
  }
  return r.unit_additive() == FiniteRing::quotient(r, ideal)->unit_additive();
}

bool audit_idealization(const FiniteRing& a, Elem j) {
  return a.unit_additive() == FiniteRing::idealization(a, j)->unit_additive();
}

bool audit_saturation(const FiniteRing& r, const Bitmap& ideal) {
  Cosets c = cosets(r, ideal);
  FiniteRingPtr b = FiniteRing::quotient(r, ideal);
  auto phi = [&](Elem x) { return c.index[c.rep[x]]; };
  Bitmap one_plus(r.size(), false);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (ideal[i]) one_plus[r.add(r.one(), static_cast<Elem>(i))] = true;
  }
  for (std::size_t x = 0; x < r.size(); ++x) {
    bool lhs = b->is_unit(phi(static_cast<Elem>(x)));
    bool rhs = false;
    for (std::size_t y = 0; y < r.size() && !rhs; ++y) {
      rhs = one_plus[r.mul(static_cast<Elem>(x), static_cast<Elem>(y))];
    }
    if (lhs != rhs) return false;
  }
  return true;
}

bool audit_intersection(const FiniteRing& s, std::size_t count, std::uint64_t seed) {
  if (s.size() > 64) return true;
  std::vector<Bitmap> ua;
  for (const auto& t : enumerate_subrings(s)) {
    if (subring_unit_additive(s, t)) ua.push_back(t);
  }
  if (ua.empty()) return true;
  std::mt19937_64 rng(seed);
  auto check = [&](const std::vector<std::size_t>& pick) {
    Bitmap inter(s.size(), true);
    for (std::size_t k : pick) {
      for (std::size_t i = 0; i < s.size(); ++i) inter[i] = inter[i] && ua[k][i];
    }
    return subring_unit_additive(s, inter);
  };
  for (std::size_t k = 0; k < ua.size(); ++k) {
    if (!check({k})) return false;
  }
  std::vector<std::size_t> everything(ua.size());
  for (std::size_t k = 0; k < ua.size(); ++k) everything[k] = k;
  if (!check(everything)) return false;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t trial = 0; trial < count; ++trial) {
    std::vector<std::size_t> pick;
    for (std::size_t k = 0; k < ua.size(); ++k) {
      if (coin(rng)) pick.push_back(k);
    }
    if (pick.empty()) pick.push_back(trial % ua.size());
    if (!check(pick)) return false;
  }
  return true;
}

bool audit_pullback(const FiniteRing& s) {
  if (s.size() > 64 || !s.unit_additive()) return true;
  auto ideals = enumerate_ideals(s);
  for (const auto& r : enumerate_subrings(s)) {
    bool r_ua = subring_unit_additive(s, r);
    for (const auto& i : ideals) {
      if (!subset(i, r)) continue;
      // ann_R(I) = 0
      bool faithful = true;
      for (std::size_t a = 1; a < s.size() && faithful; ++a) {
        if (!r[a]) continue;
        bool kills = true;
        for (std::size_t x = 0; x < s.size() && kills; ++x) {
          if (i[x] && s.mul(static_cast<Elem>(a), static_cast<Elem>(x)) != 0) kills = false;
        }
        if (kills) faithful = false;
      }
      if (faithful && !r_ua) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ corpus

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> out;
  std::vector<FiniteRingPtr> small;  // |R| <= 16, reused by later families
  auto push = [&](FiniteRingPtr r, const char* family) {
    if (r->size() <= 16) small.push_back(r);
    out.push_back({std::move(r), family});
  };
  for (std::uint32_t n = 2; n <= 60; ++n) push(FiniteRing::integers_mod(n), "cyclic");
  for (std::uint32_t a = 2; a <= 12; ++a) {
    for (std::uint32_t b = a; b <= 12; ++b) {
      out.push_back({FiniteRing::product(*FiniteRing::integers_mod(a), *FiniteRing::integers_mod(b)),
                     "product"});
    }
  }
  // Monic f over Z/n of degree d with n^d <= 256.
  auto quotients = [&](std::uint32_t n, std::size_t d) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= n;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::uint32_t> coeffs(d);
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        coeffs[i] = static_cast<std::uint32_t>(c % n);
        c /= n;
      }
      push(FiniteRing::polynomial_quotient(n, coeffs), "polynomial");
    }
  };
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U, 13U}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      std::size_t size = 1;
      for (std::size_t i = 0; i < d; ++i) size *= p;
      if (size <= 256) quotients(p, d);
    }
  }
  for (std::uint32_t n : {4U, 6U, 8U, 9U, 10U, 12U, 14U, 15U, 16U}) {
    quotients(n, 1);
    quotients(n, 2);
  }
  quotients(4, 3);
  quotients(6, 3);

  // Idealizations A (+) A/J over the small rings, one per distinct ideal J.
  const std::vector<FiniteRingPtr> base = small;
  for (const auto& a : base) {
    std::set<Bitmap> done;
    for (std::size_t j = 0; j < a->size(); ++j) {
      Bitmap ideal = principal(*a, static_cast<Elem>(j));
      if (ideal[a->one()] || !done.insert(ideal).second) continue;
      std::size_t quotient_size = a->size() / count(ideal);
      if (a->size() * quotient_size > 256) continue;
      out.push_back({FiniteRing::idealization(*a, static_cast<Elem>(j)), "idealization"});
    }
  }
  // Products of small rings with cyclic rings.
  for (const auto& a : base) {
    for (std::uint32_t m = 2; m <= 16; ++m) {
      if (a->size() * m > 256) break;
      out.push_back({FiniteRing::product(*a, *FiniteRing::integers_mod(m)), "mixed product"});
    }
  }
  return out;
}

namespace {

void audit_one(const CorpusEntry& entry, std::uint64_t seed, CorpusReport& rep) {
  const FiniteRing& r = *entry.ring;
  auto violation = [&](const std::string& audit, const std::string& detail) {
    rep.violations.push_back({r.name(), audit, detail});
  };
  ++rep.rings;
  if (r.unit_additive()) ++rep.unit_additive;

  EquivalenceReport eq = audit_equivalences(r);
  ++rep.checks;
  if (!eq.consistent()) violation("equivalences", "conditions disagree");

  auto ideals = enumerate_ideals(r);
  Bitmap nil(r.size(), false);
  for (Elem a : r.nilpotents()) nil[a] = true;
  ++rep.checks;
  if (jacobson_radical(r) != nil) violation("jacobson", "Jac(R) differs from the nilradical");

  for (const auto& i : ideals) {
    if (subset(i, nil)) {
      ++rep.checks;
      if (!audit_quotient_nil(r, i)) violation("quotient-nil", "UA(R) != UA(R/I)");
    }
    ++rep.checks;
    if (!audit_saturation(r, i)) violation("saturation", "preimage of units differs");
  }
  if (r.size() <= 16) {
    std::set<Bitmap> done;
    for (std::size_t j = 0; j < r.size(); ++j) {
      Bitmap ideal = principal(r, static_cast<Elem>(j));
      if (ideal[r.one()] || !done.insert(ideal).second) continue;
      ++rep.checks;
      if (!audit_idealization(r, static_cast<Elem>(j))) {
        violation("idealization", "UA(A) != UA(A(+)A/J)");
      }
    }
  }
  if (r.size() <= 64) {
    ++rep.checks;
    if (!audit_intersection(r, 16, seed)) violation("intersection", "non-UA intersection");
    ++rep.checks;
    if (!audit_pullback(r)) violation("pullback", "faithful-ideal pullback failed");
  }
}

}  // namespace

CorpusReport audit_corpus(const std::vector<CorpusEntry>& corpus, unsigned threads,
                          std::uint64_t seed, std::size_t stride) {
  if (stride == 0) throw PreconditionError("audit stride must be positive");
  std::vector<CorpusReport> parts(corpus.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      if (i % stride != 0) continue;
      try {
        audit_one(corpus[i], seed + i, parts[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  threads = std::max(1U, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  CorpusReport total;
  for (auto& p : parts) {
    total.rings += p.rings;
    total.unit_additive += p.unit_additive;
    total.checks += p.checks;
    for (auto& v : p.violations) total.violations.push_back(std::move(v));
  }
  return total;
}

}  // namespace unital
