#include "unital/chain.hpp"

#include "unital/error.hpp"

namespace unital {

namespace {

std::string name(char c, std::uint32_t j) { return std::string(1, c) + std::to_string(j); }

std::vector<Polynomial> chain_aux(const PolyRing* ring, std::uint32_t n) {
  std::vector<Polynomial> f(n + 1);
  f[n] = Polynomial::variable(ring, n - 1);
  for (std::uint32_t j = n - 1; j >= 1; --j) {
    f[j] = Polynomial::variable(ring, j - 1) * f[j + 1] - Polynomial::constant(ring, 1);
  }
  return f;
}

}  // namespace

Ring chain_ring(std::uint32_t n, const FieldDesc* field) {
  if (n < 1) throw PreconditionError("chain ring needs n >= 1");
  std::vector<std::string> vars;
  for (std::uint32_t j = 1; j <= n; ++j) vars.push_back(name('y', j));
  AffineSpec spec;
  spec.ring = PolyRing::get(field, vars);
  auto f = chain_aux(spec.ring, n);
  spec.inverted = {f[1]};
  for (std::uint32_t j = 1; j <= n; ++j) spec.aux.push_back({name('f', j), f[j]});
  spec.description = "chain(" + field->to_string() + "," + std::to_string(n) + ")";
  return RingPresentation::affine(std::move(spec));
}

bool ChainIsoReport::all_hold() const {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return !checks.empty();
}

ChainIsoReport chain_iso(std::uint32_t n, const FieldDesc* field) {
  Ring d = chain_ring(n, field);
  const PolyRing* yr = d->poly_ring();
  std::vector<std::string> xs;
  for (std::uint32_t j = 1; j <= n; ++j) xs.push_back(name('x', j));
  const FieldDesc* kx = extend_by_fractions(field, xs);
  auto x = [&](std::uint32_t j) { return Scalar::generator(kx, j - 1); };
  const Scalar one = Scalar::one(kx);

  ChainIsoReport rep;
  rep.n = n;
  std::vector<Scalar> psi;
  for (std::uint32_t j = 1; j <= n; ++j) {
    psi.push_back(j < n ? (one + x(j)) / x(j + 1) : x(n));
    rep.psi.push_back(name('y', j) + " -> " + psi.back().to_string());
  }
  auto f = chain_aux(yr, n);
  for (std::uint32_t j = 1; j <= n; ++j) rep.nu.push_back(name('x', j) + " -> " + f[j].to_string());

  // psi(nu(x_j)) = psi(f_j) in k(x1..xn).
  for (std::uint32_t j = 1; j <= n; ++j) {
    Scalar v = substitute(f[j], psi);
    rep.checks.push_back({"psi(nu(" + name('x', j) + "))", v.to_string(), x(j).to_string(),
                          v == x(j)});
  }
  // nu(psi(y_j)) = (1 + f_j) / f_{j+1} for j < n (an exact quotient in
  // k[y]), and f_n = y_n. Checked as polynomials and as ring elements.
  for (std::uint32_t j = 1; j <= n; ++j) {
    Polynomial yj = Polynomial::variable(yr, j - 1);
    Polynomial value = f[n];
    bool exact = true;
    if (j < n) {
      auto q = divide_exact(Polynomial::constant(yr, 1) + f[j], f[j + 1]);
      exact = q.has_value();
      value = q ? *q : Polynomial(yr);
    }
    bool holds = exact && value == yj &&
                 RingElement::from_polynomial(d, value) == RingElement::from_polynomial(d, yj);
    rep.checks.push_back({"nu(psi(" + name('y', j) + "))", exact ? value.to_string() : "not exact",
                          yj.to_string(), holds});
  }
  if (!rep.all_hold()) throw Error("chain isomorphism identity failed for n = " + std::to_string(n));
  return rep;
}

}  // namespace unital
