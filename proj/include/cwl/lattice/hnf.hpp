#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"
#include "cwl/group/int_matrix.hpp"

namespace cwl {

using IntVector = std::vector<BigInt>;

/// Row-style Hermite normal form of the lattice spanned by `rows` in Z^d:
/// echelon rows, positive pivots, entries above each pivot in [0, pivot).
inline std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows, std::size_t d) {
  for (auto& r : rows) {
    if (r.size() != d) throw Error("lattice generator has wrong dimension");
  }
  std::vector<IntVector> out;
  std::size_t top = 0;
  for (std::size_t c = 0; c < d && top < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        BigInt q = rows[i][c] / rows[top][c];
        for (std::size_t k = c; k < d; ++k) rows[i][k] -= q * rows[top][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t i = 0; i < top; ++i) {
      BigInt q = floor_div(rows[i][c], rows[top][c]);
      if (q != 0) {
        for (std::size_t k = c; k < d; ++k) rows[i][k] -= q * rows[top][k];
      }
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

/// Column index of the first nonzero entry of each HNF row.
inline std::vector<std::size_t> hnf_pivots(const std::vector<IntVector>& hnf) {
  std::vector<std::size_t> piv;
  for (const auto& r : hnf) {
    std::size_t c = 0;
    while (c < r.size() && r[c] == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

/// Canonical representative of v modulo the lattice with the given HNF.
inline IntVector reduce_mod_lattice(const std::vector<IntVector>& hnf, IntVector v) {
  auto piv = hnf_pivots(hnf);
  for (std::size_t i = 0; i < hnf.size(); ++i) {
    std::size_t c = piv[i];
    BigInt q = floor_div(v[c], hnf[i][c]);
    if (q != 0) {
      for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * hnf[i][k];
    }
  }
  return v;
}

inline bool lattice_contains(const std::vector<IntVector>& hnf, const IntVector& v) {
  for (const auto& x : reduce_mod_lattice(hnf, v)) {
    if (x != 0) return false;
  }
  return true;
}

/// Finitely generated subgroup of Z^d with a cached Hermite normal form.
class IntLattice {
 public:
  IntLattice(std::vector<IntVector> gens, std::size_t d)
      : dim_(d), gens_(std::move(gens)), hnf_(hermite_normal_form(gens_, d)) {}

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<IntVector>& generators() const noexcept { return gens_; }
  const std::vector<IntVector>& hnf() const noexcept { return hnf_; }
  std::size_t rank() const noexcept { return hnf_.size(); }
  bool contains(const IntVector& v) const { return lattice_contains(hnf_, v); }
  IntVector reduce(const IntVector& v) const { return reduce_mod_lattice(hnf_, v); }

 private:
  std::size_t dim_;
  std::vector<IntVector> gens_;
  std::vector<IntVector> hnf_;
};

struct RankIndex {
  std::size_t rank = 0;
  std::optional<BigInt> index;  // nullopt means infinite
  bool scaled_inclusion_ok = false;
};

/// Rank and index of L in Z^d; for finite index m also checks m Z^d in L.
inline RankIndex hnf_rank_index(const IntLattice& L) {
  RankIndex out;
  out.rank = L.rank();
  if (out.rank < L.dim()) return out;
  BigInt m = 1;
  auto piv = hnf_pivots(L.hnf());
  for (std::size_t i = 0; i < L.hnf().size(); ++i) m *= L.hnf()[i][piv[i]];
  out.index = m;
  out.scaled_inclusion_ok = true;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    IntVector e(L.dim(), BigInt(0));
    e[i] = m;
    if (!L.contains(e)) out.scaled_inclusion_ok = false;
  }
  return out;
}

/// Extended gcd: returns (g, x, y) with a x + b y = g >= 0.
inline std::tuple<BigInt, BigInt, BigInt> extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(tmp);
    tmp = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(tmp);
    tmp = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(tmp);
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

/// g in SL_n(Z) with g e_1 = v, for primitive v.
inline IntMatrix primitive_completion(const IntVector& v) {
  const int n = static_cast<int>(v.size());
  BigInt g = 0;
  for (const auto& x : v) g = gcd_big(g, x);
  if (g != 1) throw NotPrimitive("vector entries have gcd " + g.str());
  if (n == 1) {
    if (v[0] != 1) throw NotPrimitive("no SL_1 completion of -1");
    return IntMatrix::identity(1);
  }
  if (n == 2) {
    auto [d, x, y] = extended_gcd(v[0], v[1]);
    IntMatrix m(2);
    m(0, 0) = v[0];
    m(1, 0) = v[1];
    m(0, 1) = -y;
    m(1, 1) = x;
    // Normalize the second column by adding multiples of the first.
    if (v[0] != 0) {
      BigInt k = -floor_div(m(0, 1), v[0] < 0 ? BigInt(-v[0]) : v[0]);
      if (v[0] < 0) k = -k;
      m(0, 1) += k * v[0];
      m(1, 1) += k * v[1];
    } else {
      m(1, 1) = 0;
    }
    return m;
  }
  // Reduce v to e_1 with row operations E; keep G with G * v_current = v.
  IntVector w = v;
  IntMatrix G = IntMatrix::identity(n);
  auto add_row = [&](int i, int j, const BigInt& k) {  // w_i += k w_j
    w[static_cast<std::size_t>(i)] += k * w[static_cast<std::size_t>(j)];
    for (int r = 0; r < n; ++r) G(r, j) -= k * G(r, i);
  };
  auto swap_rows = [&](int i, int j) {
    std::swap(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]);
    for (int r = 0; r < n; ++r) std::swap(G(r, i), G(r, j));
  };
  while (true) {
    int best = -1;
    int nonzero = 0;
    for (int i = 0; i < n; ++i) {
      if (w[static_cast<std::size_t>(i)] == 0) continue;
      ++nonzero;
      if (best < 0 || abs(w[static_cast<std::size_t>(i)]) < abs(w[static_cast<std::size_t>(best)])) best = i;
    }
    if (nonzero == 1) {
      if (best != 0) swap_rows(0, best);
      break;
    }
    for (int i = 0; i < n; ++i) {
      if (i == best || w[static_cast<std::size_t>(i)] == 0) continue;
      add_row(i, best, -(w[static_cast<std::size_t>(i)] / w[static_cast<std::size_t>(best)]));
    }
  }
  if (w[0] < 0) {  // w = -e_1: negate row 0, i.e. column 0 of G
    w[0] = -w[0];
    for (int r = 0; r < n; ++r) G(r, 0) = -G(r, 0);
  }
  if (determinant(G) < 0) {
    for (int r = 0; r < n; ++r) G(r, 1) = -G(r, 1);
  }
  return G;
}

/// Given N <= Z^d of rank at most d-1, a primitive rank-two summand W = <x1, x2>
/// with rank(N cap W) <= 1.
struct RankTwoSummand {
  IntVector x1, x2;
  std::size_t intersection_rank = 0;
};

inline RankTwoSummand rank_two_reduction(const std::vector<IntVector>& n_gens, std::size_t d) {
  if (d < 2) throw Error("rank-two reduction needs d >= 2");
  auto hnf = hermite_normal_form(n_gens, d);
  if (hnf.size() >= d) throw Error("subgroup has full rank");
  // Some standard basis vector lies outside the rational span of N.
  std::size_t pick = d;
  for (std::size_t i = 0; i < d && pick == d; ++i) {
    auto rows = hnf;
    IntVector e(d, BigInt(0));
    e[i] = 1;
    rows.push_back(e);
    if (hermite_normal_form(rows, d).size() > hnf.size()) pick = i;
  }
  IntVector x1(d, BigInt(0));
  x1[pick] = 1;
  IntMatrix g = primitive_completion(x1);
  RankTwoSummand out;
  out.x1 = g.column(0);
  out.x2 = g.column(1);
  auto rows = hnf;
  rows.push_back(out.x1);
  rows.push_back(out.x2);
  // rank(N cap W) = rank N + rank W - rank(N + W).
  out.intersection_rank = hnf.size() + 2 - hermite_normal_form(rows, d).size();
  return out;
}

}  // namespace cwl
