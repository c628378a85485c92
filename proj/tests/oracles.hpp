#pragma once

// Independent checkers used by the tests. None of these call the Gröbner
// engine.

#include <gmpxx.h>

#include <map>
#include <string>
#include <numeric>
#include <vector>

#include "unital/polynomial.hpp"

namespace oracle {

using unital::Monomial;
using unital::Polynomial;

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i == nvars) {
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

/// Is the linear system A x = b (dense rows over Q) consistent?
inline bool consistent(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return true;
  const std::size_t cols = rows[0].size();  // last column is b
  std::size_t r = 0;
  for (std::size_t c = 0; c + 1 < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (rows[i][cols - 1] != 0) return false;
  }
  return true;
}

/// Same over F_p; entries are reduced first.
inline bool consistent_mod(const std::vector<std::vector<mpq_class>>& in, unsigned long p) {
  if (in.empty()) return true;
  const mpz_class m = p;
  auto reduce = [&](const mpq_class& q) {
    mpz_class den_inv;
    mpz_class den = q.get_den();
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    mpz_class v = q.get_num() * den_inv;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
  };
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& row : in) {
    rows.emplace_back();
    for (const auto& q : row) rows.back().push_back(reduce(q));
  }
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c + 1 < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), rows[r][c].get_mpz_t(), m.get_mpz_t());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpz_class f = rows[i][c] * inv;
      for (std::size_t k = c; k < cols; ++k) {
        mpz_class v = rows[i][k] - f * rows[r][k];
        mpz_fdiv_r(rows[i][k].get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
      }
    }
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (rows[i][cols - 1] != 0) return false;
  }
  return true;
}

/// Does f = sum c_i g_i have a solution with deg c_i <= degree? Over Q or
/// a prime field.
inline bool member_bounded(const Polynomial& f, const std::vector<Polynomial>& gens,
                           std::uint32_t degree) {
  const std::size_t n = f.ring()->arity();
  const unsigned long p = f.ring()->field()->characteristic();
  auto value = [&](const unital::Scalar& c) {
    return p ? mpq_class(static_cast<unsigned long>(c.residue())) : c.rational();
  };
  auto cofactor_monos = monomials_up_to(n, degree);
  std::map<std::vector<std::uint32_t>, std::size_t> row_of;
  auto row = [&](const Monomial& m) {
    auto it = row_of.find(m.exponents());
    if (it != row_of.end()) return it->second;
    std::size_t k = row_of.size();
    row_of.emplace(m.exponents(), k);
    return k;
  };
  struct Entry {
    std::size_t row, col;
    mpq_class value;
  };
  std::vector<Entry> entries;
  std::size_t col = 0;
  for (const auto& g : gens) {
    for (const auto& m : cofactor_monos) {
      for (const auto& t : g.terms()) {
        entries.push_back({row(t.monomial * m), col, value(t.coeff)});
      }
      ++col;
    }
  }
  std::vector<std::pair<std::size_t, mpq_class>> rhs;
  for (const auto& t : f.terms()) rhs.push_back({row(t.monomial), value(t.coeff)});
  std::vector<std::vector<mpq_class>> rows(row_of.size(), std::vector<mpq_class>(col + 1));
  for (auto& e : entries) rows[e.row][e.col] += e.value;
  for (auto& [r, v] : rhs) rows[r][col] += v;
  return p ? consistent_mod(rows, p) : consistent(std::move(rows));
}

// Direct arithmetic on Z/n, no tables.
inline bool cyclic_ua(unsigned n) {
  for (unsigned u = 0; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    for (unsigned v = 0; v < n; ++v) {
      if (std::gcd(v, n) != 1) continue;
      unsigned s = (u + v) % n;
      bool unit = std::gcd(s, n) == 1;
      unsigned p = s;
      for (unsigned k = 0; k < n; ++k) p = (p * s) % n;
      if (!unit && p != 0) return false;
    }
  }
  return true;
}

// Expected udim by hand for families whose units are known in closed form:
// fields and polynomial rings are unit-additive; a Laurent ring in m >= 1
// variables has monomial units, so x+1 breaks additivity and one step
// reaches k(x); chain(n) has udim n; ZZ and Z_(p) reach Q in one step.
// Z[x,c/x] (c > 1 not a unit): units are +-c^a x^b, 1+1 = 2 is not a unit,
// inverting the unit sums gives the Laurent ring Q[x,1/x], one more step.
inline int udim_oracle(const std::string& family, int n) {
  if (family == "field" || family == "polynomial") return 0;
  if (family == "laurent" || family == "integers" || family == "local") return 1;
  if (family == "integral laurent") return 2;
  if (family == "chain") return n;
  return -1;
}

}  // namespace oracle
