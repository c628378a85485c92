#include "unital/scalar.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "unital/error.hpp"
#include "unital/polynomial.hpp"

namespace unital {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::unique_ptr<FieldDesc>>& registry() {
  static std::map<std::string, std::unique_ptr<FieldDesc>> r;
  return r;
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t reduce_mpz(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for n < 2^32.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    std::uint64_t x = 1;
    std::uint64_t b = a % n;
    std::uint64_t e = d;
    while (e > 0) {
      if (e & 1U) x = x * b % n;
      b = b * b % n;
      e >>= 1U;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int FieldDesc::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const FieldDesc* rational_field() {
  static const FieldDesc* q = [] {
    std::lock_guard lock(registry_mutex());
    auto desc = std::unique_ptr<FieldDesc>(new FieldDesc());
    desc->kind_ = FieldKind::Rational;
    desc->name_ = "Q";
    const FieldDesc* raw = desc.get();
    registry().emplace("Q", std::move(desc));
    return raw;
  }();
  return q;
}

const FieldDesc* prime_field(std::uint32_t p) {
  if (p >= (1U << 31) || !is_prime_u32(p)) {
    throw PreconditionError("F_" + std::to_string(p) +
                            ": characteristic must be a prime below 2^31");
  }
  const std::string name = "F_" + std::to_string(p);
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  if (auto it = reg.find(name); it != reg.end()) return it->second.get();
  auto desc = std::unique_ptr<FieldDesc>(new FieldDesc());
  desc->kind_ = FieldKind::Prime;
  desc->characteristic_ = p;
  desc->name_ = name;
  const FieldDesc* raw = desc.get();
  reg.emplace(name, std::move(desc));
  return raw;
}

const FieldDesc* extend_by_fractions(const FieldDesc* base,
                                     const std::vector<std::string>& vars) {
  if (vars.empty()) {
    throw PreconditionError("extend_by_fractions: empty variable list");
  }
  std::vector<std::string> all = base->variables();
  std::set<std::string> seen(all.begin(), all.end());
  for (const auto& v : vars) {
    if (v.empty()) throw PreconditionError("extend_by_fractions: empty name");
    if (!seen.insert(v).second) {
      throw PreconditionError("extend_by_fractions: variable '" + v +
                              "' already present in " + base->to_string());
    }
    all.push_back(v);
  }
  const FieldDesc* prime = base->prime_subfield();
  std::string name = prime->to_string() + "(";
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i) name += ",";
    name += all[i];
  }
  name += ")";
  {
    std::lock_guard lock(registry_mutex());
    auto& reg = registry();
    if (auto it = reg.find(name); it != reg.end()) return it->second.get();
  }
  // PolyRing::get takes its own lock, so build the ring outside ours.
  const PolyRing* ring = PolyRing::get(prime, all, MonomialOrder::grevlex());
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  if (auto it = reg.find(name); it != reg.end()) return it->second.get();
  auto desc = std::unique_ptr<FieldDesc>(new FieldDesc());
  desc->kind_ = FieldKind::Function;
  desc->characteristic_ = prime->characteristic();
  desc->base_ = prime;
  desc->vars_ = all;
  desc->fraction_ring_ = ring;
  desc->name_ = name;
  const FieldDesc* raw = desc.get();
  reg.emplace(name, std::move(desc));
  return raw;
}

bool field_embeds(const FieldDesc* from, const FieldDesc* to) {
  if (from == to) return true;
  if (from->characteristic() != to->characteristic()) return false;
  if (!from->is_function_field()) return true;
  if (!to->is_function_field()) return false;
  for (const auto& v : from->variables()) {
    if (to->variable_index(v) < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Scalar::Scalar() : field_(rational_field()), value_(mpq_class(0)) {}

Scalar::Scalar(const FieldDesc* field, mpq_class value)
    : field_(field), value_(std::move(value)) {}

Scalar::Scalar(const FieldDesc* field, std::uint32_t value)
    : field_(field), value_(value) {}

Scalar::Scalar(const FieldDesc* field, Fraction value)
    : field_(field), value_(std::move(value)) {}

Scalar Scalar::zero(const FieldDesc* field) { return from_int(field, 0); }

Scalar Scalar::one(const FieldDesc* field) { return from_int(field, 1); }

Scalar Scalar::from_int(const FieldDesc* field, long long value) {
  return from_integer(field, mpz_class(std::to_string(value)));
}

Scalar Scalar::from_integer(const FieldDesc* field, const mpz_class& value) {
  switch (field->kind()) {
    case FieldKind::Rational:
      return Scalar(field, mpq_class(value));
    case FieldKind::Prime:
      return Scalar(field, reduce_mpz(value, field->characteristic()));
    case FieldKind::Function: {
      const PolyRing* ring = field->fraction_ring();
      Scalar c = from_integer(field->prime_subfield(), value);
      return Scalar(field, Fraction{std::make_shared<const Polynomial>(
                                        Polynomial::constant(ring, c)),
                                    std::make_shared<const Polynomial>(
                                        Polynomial::constant(ring, 1))});
    }
  }
  return {};
}

Scalar Scalar::from_rational(const FieldDesc* field, const mpq_class& value) {
  if (field->kind() == FieldKind::Rational) {
    mpq_class v = value;
    v.canonicalize();
    return Scalar(field, v);
  }
  Scalar num = from_integer(field, value.get_num());
  Scalar den = from_integer(field, value.get_den());
  return num / den;
}

Scalar Scalar::make_function(const FieldDesc* field, Polynomial num,
                             Polynomial den, bool reduce) {
  const PolyRing* ring = field->fraction_ring();
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    return Scalar(field,
                  Fraction{std::make_shared<const Polynomial>(ring),
                           std::make_shared<const Polynomial>(
                               Polynomial::constant(ring, 1))});
  }
  if (reduce && !den.is_constant()) {
    Polynomial g = poly_gcd(num, den);
    if (!g.is_one()) {
      num = *divide_exact(num, g);
      den = *divide_exact(den, g);
    }
  }
  Scalar lc = den.leading_coeff().inverse();
  if (!lc.is_one()) {
    num = num.scale(lc);
    den = den.scale(lc);
  }
  return Scalar(field, Fraction{std::make_shared<const Polynomial>(std::move(num)),
                                std::make_shared<const Polynomial>(std::move(den))});
}

Scalar Scalar::from_fraction(const FieldDesc* field, const Polynomial& num,
                             const Polynomial& den) {
  if (!field->is_function_field()) {
    throw DomainError("from_fraction requires a function field");
  }
  const PolyRing* ring = field->fraction_ring();
  return make_function(field, num.rename_into(ring), den.rename_into(ring),
                       true);
}

Scalar Scalar::generator(const FieldDesc* field, std::size_t index) {
  if (!field->is_function_field() || index >= field->variables().size()) {
    throw DomainError("no generator " + std::to_string(index) + " in " +
                      field->to_string());
  }
  const PolyRing* ring = field->fraction_ring();
  return Scalar(field, Fraction{std::make_shared<const Polynomial>(
                                    Polynomial::variable(ring, index)),
                                std::make_shared<const Polynomial>(
                                    Polynomial::constant(ring, 1))});
}

bool Scalar::is_zero() const {
  switch (field_->kind()) {
    case FieldKind::Rational:
      return std::get<mpq_class>(value_) == 0;
    case FieldKind::Prime:
      return std::get<std::uint32_t>(value_) == 0;
    case FieldKind::Function:
      return std::get<Fraction>(value_).num->is_zero();
  }
  return false;
}

bool Scalar::is_one() const {
  switch (field_->kind()) {
    case FieldKind::Rational:
      return std::get<mpq_class>(value_) == 1;
    case FieldKind::Prime:
      return std::get<std::uint32_t>(value_) == 1;
    case FieldKind::Function: {
      const auto& f = std::get<Fraction>(value_);
      return f.num->is_one() && f.den->is_one();
    }
  }
  return false;
}

bool Scalar::is_prime_constant() const {
  if (!field_->is_function_field()) return true;
  const auto& f = std::get<Fraction>(value_);
  return f.num->is_constant() && f.den->is_constant();
}

Scalar Scalar::prime_constant() const {
  if (!field_->is_function_field()) return *this;
  if (!is_prime_constant()) {
    throw DomainError("scalar " + to_string() + " is not a constant");
  }
  const auto& f = std::get<Fraction>(value_);
  return f.num->constant_value() / f.den->constant_value();
}

void Scalar::require_same_field(const Scalar& other) const {
  if (field_ != other.field_) {
    throw DomainError("scalar field mismatch: " + field_->to_string() +
                      " vs " + other.field_->to_string());
  }
}

Scalar Scalar::operator-() const {
  switch (field_->kind()) {
    case FieldKind::Rational:
      return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
    case FieldKind::Prime: {
      std::uint32_t v = std::get<std::uint32_t>(value_);
      return Scalar(field_, v == 0 ? 0U : field_->characteristic() - v);
    }
    case FieldKind::Function: {
      const auto& f = std::get<Fraction>(value_);
      return Scalar(field_, Fraction{std::make_shared<const Polynomial>(-*f.num),
                                     f.den});
    }
  }
  return {};
}

Scalar Scalar::operator+(const Scalar& other) const {
  require_same_field(other);
  switch (field_->kind()) {
    case FieldKind::Rational:
      return Scalar(field_, mpq_class(std::get<mpq_class>(value_) +
                                      std::get<mpq_class>(other.value_)));
    case FieldKind::Prime: {
      std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} +
                        std::get<std::uint32_t>(other.value_);
      return Scalar(field_,
                    static_cast<std::uint32_t>(s % field_->characteristic()));
    }
    case FieldKind::Function: {
      const auto& a = std::get<Fraction>(value_);
      const auto& b = std::get<Fraction>(other.value_);
      if (a.num->is_zero()) return other;
      if (b.num->is_zero()) return *this;
      if (*a.den == *b.den) {
        return make_function(field_, *a.num + *b.num, *a.den, true);
      }
      return make_function(field_, *a.num * *b.den + *b.num * *a.den,
                           *a.den * *b.den, true);
    }
  }
  return {};
}

Scalar Scalar::operator-(const Scalar& other) const { return *this + (-other); }

Scalar Scalar::operator*(const Scalar& other) const {
  require_same_field(other);
  switch (field_->kind()) {
    case FieldKind::Rational:
      return Scalar(field_, mpq_class(std::get<mpq_class>(value_) *
                                      std::get<mpq_class>(other.value_)));
    case FieldKind::Prime: {
      std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(value_)} *
                        std::get<std::uint32_t>(other.value_);
      return Scalar(field_,
                    static_cast<std::uint32_t>(s % field_->characteristic()));
    }
    case FieldKind::Function: {
      const auto& a = std::get<Fraction>(value_);
      const auto& b = std::get<Fraction>(other.value_);
      if (a.num->is_zero() || b.num->is_zero()) return zero(field_);
      // Cross-cancel; inputs are reduced so the product is reduced too.
      Polynomial an = *a.num, ad = *a.den, bn = *b.num, bd = *b.den;
      if (!bd.is_constant()) {
        Polynomial g = poly_gcd(an, bd);
        if (!g.is_one()) {
          an = *divide_exact(an, g);
          bd = *divide_exact(bd, g);
        }
      }
      if (!ad.is_constant()) {
        Polynomial g = poly_gcd(bn, ad);
        if (!g.is_one()) {
          bn = *divide_exact(bn, g);
          ad = *divide_exact(ad, g);
        }
      }
      return make_function(field_, an * bn, ad * bd, false);
    }
  }
  return {};
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  switch (field_->kind()) {
    case FieldKind::Rational:
      return Scalar(field_, mpq_class(1 / std::get<mpq_class>(value_)));
    case FieldKind::Prime: {
      std::uint32_t p = field_->characteristic();
      return Scalar(field_, mod_pow(std::get<std::uint32_t>(value_), p - 2, p));
    }
    case FieldKind::Function: {
      const auto& f = std::get<Fraction>(value_);
      return make_function(field_, *f.den, *f.num, false);
    }
  }
  return {};
}

Scalar Scalar::operator/(const Scalar& other) const {
  require_same_field(other);
  if (other.is_zero()) throw DivisionByZero();
  return *this * other.inverse();
}

Scalar Scalar::pow(long long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result = one(field_);
  Scalar base = *this;
  auto e = static_cast<unsigned long long>(exponent);
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& other) const {
  if (field_ != other.field_) return false;
  switch (field_->kind()) {
    case FieldKind::Rational:
      return std::get<mpq_class>(value_) == std::get<mpq_class>(other.value_);
    case FieldKind::Prime:
      return std::get<std::uint32_t>(value_) ==
             std::get<std::uint32_t>(other.value_);
    case FieldKind::Function: {
      const auto& a = std::get<Fraction>(value_);
      const auto& b = std::get<Fraction>(other.value_);
      return *a.num == *b.num && *a.den == *b.den;
    }
  }
  return false;
}

const mpq_class& Scalar::rational() const {
  if (field_->kind() != FieldKind::Rational) {
    throw DomainError("not a rational scalar");
  }
  return std::get<mpq_class>(value_);
}

std::uint32_t Scalar::residue() const {
  if (field_->kind() != FieldKind::Prime) {
    throw DomainError("not a prime-field scalar");
  }
  return std::get<std::uint32_t>(value_);
}

const Polynomial& Scalar::numerator() const {
  if (field_->kind() != FieldKind::Function) {
    throw DomainError("not a function-field scalar");
  }
  return *std::get<Fraction>(value_).num;
}

const Polynomial& Scalar::denominator() const {
  if (field_->kind() != FieldKind::Function) {
    throw DomainError("not a function-field scalar");
  }
  return *std::get<Fraction>(value_).den;
}

std::string Scalar::to_string() const {
  switch (field_->kind()) {
    case FieldKind::Rational:
      return std::get<mpq_class>(value_).get_str();
    case FieldKind::Prime:
      return std::to_string(std::get<std::uint32_t>(value_));
    case FieldKind::Function: {
      if (is_prime_constant()) return prime_constant().to_string();
      const auto& f = std::get<Fraction>(value_);
      std::string s = "(" + f.num->to_string() + ")";
      if (!f.den->is_one()) s += "/(" + f.den->to_string() + ")";
      return s;
    }
  }
  return {};
}

bool Scalar::prints_atomic() const { return is_prime_constant(); }

int Scalar::print_sign() const {
  if (field_->kind() == FieldKind::Rational) {
    return sgn(std::get<mpq_class>(value_)) < 0 ? -1 : 1;
  }
  if (field_->is_function_field() && is_prime_constant()) {
    return prime_constant().print_sign();
  }
  return 1;
}

std::size_t Scalar::hash() const {
  return std::hash<std::string>{}(to_string()) ^
         (reinterpret_cast<std::uintptr_t>(field_) * 0x9e3779b97f4a7c15ULL);
}

Scalar embed_scalar(const Scalar& value, const FieldDesc* target) {
  const FieldDesc* from = value.field();
  if (from == target) return value;
  if (!field_embeds(from, target)) {
    throw DomainError("cannot embed " + from->to_string() + " into " +
                      target->to_string());
  }
  if (!from->is_function_field()) {
    if (!target->is_function_field()) return value;  // same prime field
    const PolyRing* ring = target->fraction_ring();
    return Scalar::from_fraction(target, Polynomial::constant(ring, value),
                                 Polynomial::constant(ring, 1));
  }
  const PolyRing* ring = target->fraction_ring();
  return Scalar::from_fraction(target, value.numerator().rename_into(ring),
                               value.denominator().rename_into(ring));
}

}  // namespace unital
