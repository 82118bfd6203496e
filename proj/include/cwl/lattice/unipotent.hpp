#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cwl/coset/oracle.hpp"
#include "cwl/group/int_matrix.hpp"
#include "cwl/group/matrix_group.hpp"
#include "cwl/lattice/hnf.hpp"

namespace cwl {

/// u_i(x) = I + sum_{j != i} x_j E_ij, with x indexed over j != i in increasing order.
inline IntMatrix row_unipotent(int n, int i, const IntVector& x) {
  IntMatrix u = IntMatrix::identity(n);
  std::size_t k = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    u(i, j) = x[k++];
  }
  return u;
}

struct UnipotentRankProbe {
  std::size_t rank = 0;
  std::vector<IntVector> basis;  // HNF basis of the found lattice
  bool exact = false;            // false: "rank within box", a lower bound
  std::size_t points = 0;        // box points found in H
  std::string label() const { return exact ? "exact" : "rank within box"; }
};

/// Rank of {x in Z^{n-1} : c u_i(x) c^-1 in H}. Exact for congruence oracles,
/// otherwise a lower bound from the box [-B, B]^{n-1}.
inline UnipotentRankProbe unipotent_rank_probe(const MatrixGroupZ& G, const SubgroupOracle<MatrixGroupZ>& H, int i,
                                               int B = 4, const std::optional<IntMatrix>& conjugator = std::nullopt) {
  const int n = G.size();
  if (i < 0 || i >= n) throw std::invalid_argument("line index out of range");
  if (B < 1) throw std::invalid_argument("box bound must be >= 1");
  const std::size_t d = static_cast<std::size_t>(n - 1);
  UnipotentRankProbe out;
  if (H.family == OracleFamily::CongruenceLevel && H.level) {
    // Gamma(N) is normal, and u_i(x) = I mod N iff N divides x.
    for (std::size_t k = 0; k < d; ++k) {
      IntVector e(d, BigInt(0));
      e[k] = *H.level;
      out.basis.push_back(e);
    }
    out.basis = hermite_normal_form(out.basis, d);
    out.rank = d;
    out.exact = true;
    return out;
  }
  IntMatrix cinv;
  if (conjugator) cinv = inverse_unimodular(*conjugator);
  std::vector<IntVector> found;
  IntVector x(d, BigInt(-B));
  while (true) {
    IntMatrix u = row_unipotent(n, i, x);
    if (conjugator) u = *conjugator * u * cinv;
    if (H.contains(u)) {
      ++out.points;
      found.push_back(x);
    }
    std::size_t k = 0;
    while (k < d && x[k] == B) x[k++] = -B;
    if (k == d) break;
    x[k] += 1;
  }
  out.basis = hermite_normal_form(found, d);
  out.rank = out.basis.size();
  return out;
}

namespace detail {

/// Primitive integer vectors spanning the rational kernel of the stacked rows.
inline std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> q;
    for (const auto& v : r) q.emplace_back(v);
    m.push_back(std::move(q));
  }
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = Rational(1) / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) m[r][k] -= f * m[row][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<IntVector> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<std::size_t>(pivot_col[r])] = -m[r][free];
    BigInt lcm = 1;
    for (const auto& q : v) {
      BigInt den(boost::multiprecision::denominator(q).str());
      lcm = lcm / gcd_big(lcm, den) * den;
    }
    IntVector iv;
    BigInt g = 0;
    for (const auto& q : v) {
      iv.push_back(BigInt(boost::multiprecision::numerator(q).str()) * (lcm / BigInt(boost::multiprecision::denominator(q).str())));
      g = gcd_big(g, iv.back());
    }
    for (auto& e : iv) e /= g;
    out.push_back(std::move(iv));
  }
  return out;
}

inline bool is_upper_unitriangular(const IntMatrix& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j <= i; ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

inline IntMatrix block_one(const IntMatrix& inner) {
  IntMatrix out = IntMatrix::identity(inner.n + 1);
  for (int i = 0; i < inner.n; ++i)
    for (int j = 0; j < inner.n; ++j) out(i + 1, j + 1) = inner(i, j);
  return out;
}

/// Returns C in SL_n(Z) with C^-1 g C upper unitriangular for every g.
inline IntMatrix triangularizing_basis(const std::vector<IntMatrix>& gens, int n) {
  if (n == 1) return IntMatrix::identity(1);
  std::vector<IntVector> rows;
  for (const auto& g : gens) {
    IntMatrix d = g - IntMatrix::identity(n);
    for (int i = 0; i < n; ++i) rows.push_back(d.row(i));
  }
  auto ker = integer_kernel(rows, static_cast<std::size_t>(n));
  if (ker.empty()) throw FixedSpaceTrivial("generators have no common fixed vector in dimension " + std::to_string(n));
  IntMatrix P = primitive_completion(ker.front());
  IntMatrix Pinv = inverse_unimodular(P);
  std::vector<IntMatrix> lower;
  for (const auto& g : gens) {
    IntMatrix c = Pinv * g * P;  // first column is e_1
    IntMatrix inner(n - 1);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) inner(i - 1, j - 1) = c(i, j);
    lower.push_back(std::move(inner));
  }
  return P * block_one(triangularizing_basis(lower, n - 1));
}

}  // namespace detail

struct KolchinResult {
  IntMatrix g;                       // g N g^-1 lies in UT_n(Z)
  std::vector<IntMatrix> conjugated;  // g x g^-1 for each generator
};

/// Common-fixed-vector triangularization of a unipotent generating set, verified by conjugation.
inline KolchinResult kolchin_triangularize(const std::vector<IntMatrix>& gens) {
  if (gens.empty()) throw std::invalid_argument("kolchin_triangularize needs generators");
  const int n = gens.front().n;
  for (const auto& g : gens) {
    if (g.n != n) throw MixedModel("generator sizes differ");
    if (!(power(g - IntMatrix::identity(n), n) == IntMatrix(n))) {
      throw NotUnipotent("(g - I)^" + std::to_string(n) + " != 0 for " + format_matrix(g));
    }
  }
  IntMatrix C = detail::triangularizing_basis(gens, n);
  KolchinResult out;
  out.g = inverse_unimodular(C);
  for (const auto& x : gens) {
    IntMatrix y = out.g * x * C;
    if (!detail::is_upper_unitriangular(y)) throw Error("triangularization failed post-verification");
    out.conjugated.push_back(std::move(y));
  }
  return out;
}

}  // namespace cwl
