#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cwl/coset/oracle.hpp"
#include "cwl/group/free_abelian.hpp"
#include "cwl/group/free_group.hpp"
#include "cwl/group/matrix_group.hpp"
#include "cwl/lattice/hnf.hpp"
#include "cwl/stallings/stallings.hpp"

namespace cwl {

template <GroupModel M>
SubgroupOracle<M> trivial_subgroup(const M& model) {
  SubgroupOracle<M> H;
  H.family = OracleFamily::Trivial;
  H.name = "{e}";
  Element<M> id = model.identity();
  H.membership = [id](const Element<M>& g) { return g == id; };
  H.key = [&model](const Element<M>& g) { return model.encode(g); };
  return H;
}

template <GroupModel M>
SubgroupOracle<M> whole_group(const M& model) {
  SubgroupOracle<M> H;
  H.family = OracleFamily::WholeGroup;
  H.name = "G";
  H.membership = [](const Element<M>&) { return true; };
  H.key = [](const Element<M>&) { return std::string(); };
  H.generators = model.generators();
  return H;
}

/// Membership-only oracle; coset keys then come from the linear-scan fallback.
template <GroupModel M>
SubgroupOracle<M> custom_subgroup(std::string name, std::function<bool(const Element<M>&)> pred,
                                  std::function<std::string(const Element<M>&)> key = {},
                                  std::vector<Element<M>> gens = {}) {
  SubgroupOracle<M> H;
  H.family = OracleFamily::Custom;
  H.name = std::move(name);
  H.membership = std::move(pred);
  H.key = std::move(key);
  H.generators = std::move(gens);
  return H;
}

// ---------------------------------------------------------------- free groups

/// Subgroup of F_r generated by words, backed by its folded graph. A single
/// one-letter generator uses the trailing-run key; otherwise the key is the state
/// reached by g^-1 in the core with hanging trees.
inline SubgroupOracle<FreeGroup> free_subgroup(const FreeGroup& F, std::vector<Word> gens) {
  for (auto& w : gens) w = F.reduce(w);
  SubgroupOracle<FreeGroup> H;
  H.family = OracleFamily::FreeGroupGens;
  H.name = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) H.name += (i ? "," : "") + F.format(gens[i]);
  H.name += ">";
  H.generators = gens;
  auto graph = std::make_shared<StallingsGraph>(fold(F.rank(), gens));
  H.membership = [graph](const Word& g) { return graph->accepts(g); };
  if (gens.size() == 1 && gens[0].size() == 1) {
    int x = std::abs(gens[0].at(0));
    H.key = [x](const Word& g) {
      std::size_t end = g.size();
      while (end > 0 && std::abs(g.at(end - 1)) == x) --end;
      return g.letters.substr(0, end);
    };
  } else {
    H.key = [graph, &F](const Word& g) {
      auto [v, tail] = graph->state_after(F.inverse(g));
      std::string out;
      append_u32(out, static_cast<std::uint32_t>(v));
      return out + tail.letters;
    };
  }
  return H;
}

// ---------------------------------------------------------------- Z^d

/// Sublattice L <= Z^d; key = canonical residue modulo L.
inline SubgroupOracle<FreeAbelian> sublattice(const FreeAbelian& Z, const std::vector<IntVec>& gens) {
  std::vector<IntVector> rows;
  for (const auto& g : gens) {
    IntVector r;
    for (auto c : g.v) r.emplace_back(c);
    rows.push_back(r);
  }
  auto L = std::make_shared<IntLattice>(rows, static_cast<std::size_t>(Z.dim()));
  auto residue = [L](const IntVec& g) {
    IntVector v;
    for (auto c : g.v) v.emplace_back(c);
    std::string out;
    for (const auto& x : L->reduce(v)) append_bigint(out, x);
    return out;
  };
  SubgroupOracle<FreeAbelian> H;
  H.family = OracleFamily::Sublattice;
  H.name = "sublattice(rank " + std::to_string(L->rank()) + ")";
  H.generators = gens;
  H.key = residue;
  std::string zero = residue(Z.identity());
  H.membership = [residue, zero](const IntVec& g) { return residue(g) == zero; };
  return H;
}

// ---------------------------------------------------------------- matrix families

namespace detail {

inline std::string encode_vector(const IntVector& v) {
  std::string out;
  for (const auto& x : v) append_bigint(out, x);
  return out;
}

inline std::string encode_rows(const std::vector<IntVector>& rows) {
  std::string out;
  append_u32(out, static_cast<std::uint32_t>(rows.size()));
  for (const auto& r : rows) out += encode_vector(r);
  return out;
}

/// Column-reduced form of g under right multiplication by UT_n: column j is
/// reduced modulo the lattice of columns 0..j-1.
inline IntMatrix ut_reduce(const IntMatrix& g) {
  IntMatrix out = g;
  std::vector<IntVector> prev;
  const auto n = static_cast<std::size_t>(g.n);
  for (int j = 0; j < g.n; ++j) {
    IntVector col = out.column(j);
    if (!prev.empty()) {
      col = reduce_mod_lattice(hermite_normal_form(prev, n), col);
      for (int i = 0; i < g.n; ++i) out(i, j) = col[static_cast<std::size_t>(i)];
    }
    prev.push_back(g.column(j));
  }
  return out;
}

inline IntVector normalize_line(IntVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

}  // namespace detail

/// UT_n(Z), upper unitriangular matrices.
inline SubgroupOracle<MatrixGroupZ> unitriangular(const MatrixGroupZ& G) {
  SubgroupOracle<MatrixGroupZ> H;
  H.family = OracleFamily::Unitriangular;
  H.name = "UT" + std::to_string(G.size());
  H.membership = [](const IntMatrix& g) {
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j <= i; ++j)
        if (g(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  };
  H.key = [&G](const IntMatrix& g) { return G.encode(detail::ut_reduce(g)); };
  for (int i = 0; i < G.size(); ++i)
    for (int j = i + 1; j < G.size(); ++j) H.generators.push_back(IntMatrix::elementary(G.size(), i, j, 1));
  return H;
}

/// Stab(Z v) = {g : g v = +-v}; key = g v with first nonzero coordinate positive.
inline SubgroupOracle<MatrixGroupZ> line_stabilizer(const MatrixGroupZ& G, IntVector v) {
  if (static_cast<int>(v.size()) != G.size()) throw MixedModel("line vector has wrong dimension");
  BigInt g = 0;
  for (const auto& x : v) g = gcd_big(g, x);
  if (g != 1) throw NotPrimitive("line stabilizer needs a primitive vector");
  SubgroupOracle<MatrixGroupZ> H;
  H.family = OracleFamily::LineStabilizer;
  H.name = "Stab(line)";
  IntVector base = detail::normalize_line(v);
  H.key = [v](const IntMatrix& m) { return detail::encode_vector(detail::normalize_line(m * v)); };
  H.membership = [v, base](const IntMatrix& m) { return detail::normalize_line(m * v) == base; };
  return H;
}

/// Stab(W0) for the lattice W0 spanned by `basis`; key = HNF of g W0.
inline SubgroupOracle<MatrixGroupZ> subspace_stabilizer(const MatrixGroupZ& G, std::vector<IntVector> basis) {
  const auto n = static_cast<std::size_t>(G.size());
  for (const auto& b : basis)
    if (b.size() != n) throw MixedModel("subspace vector has wrong dimension");
  auto image_key = [basis, n](const IntMatrix& m) {
    std::vector<IntVector> rows;
    for (const auto& b : basis) rows.push_back(m * b);
    return detail::encode_rows(hermite_normal_form(rows, n));
  };
  SubgroupOracle<MatrixGroupZ> H;
  H.family = OracleFamily::SubspaceStabilizer;
  H.name = "Stab(W0, dim " + std::to_string(basis.size()) + ")";
  H.key = image_key;
  std::string base = image_key(G.identity());
  H.membership = [image_key, base](const IntMatrix& m) { return image_key(m) == base; };
  return H;
}

/// Principal congruence subgroup Gamma_n(N); key = g mod N.
inline SubgroupOracle<MatrixGroupZ> congruence(const MatrixGroupZ& G, const BigInt& N) {
  if (N < 1) throw Error("congruence level must be positive");
  SubgroupOracle<MatrixGroupZ> H;
  H.family = OracleFamily::CongruenceLevel;
  H.name = "Gamma(" + N.str() + ")";
  H.level = N;
  H.key = [N](const IntMatrix& m) {
    std::string out;
    for (const auto& x : m.a) append_bigint(out, mod_floor(x, N));
    return out;
  };
  H.membership = [N](const IntMatrix& m) {
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j)
        if (mod_floor(m(i, j) - (i == j ? 1 : 0), N) != 0) return false;
    return true;
  };
  for (int i = 0; i < G.size(); ++i)
    for (int j = 0; j < G.size(); ++j)
      if (i != j) H.generators.push_back(IntMatrix::elementary(G.size(), i, j, N));
  return H;
}

/// <x> for a transvection x = I + c E_ij; key reduces column j modulo Z c C_i.
inline SubgroupOracle<MatrixGroupZ> cyclic_powers(const MatrixGroupZ& G, const IntMatrix& x) {
  int ti = -1, tj = -1;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      if (i == j) {
        if (x(i, j) != 1) throw UnsupportedFamily("cyclic powers need a transvection base");
      } else if (x(i, j) != 0) {
        if (ti >= 0) throw UnsupportedFamily("cyclic powers need a transvection base");
        ti = i;
        tj = j;
      }
    }
  SubgroupOracle<MatrixGroupZ> H;
  H.family = OracleFamily::CyclicPowers;
  H.name = "<" + format_matrix(x) + ">";
  H.generators = {x};
  if (ti < 0) {
    H.membership = [](const IntMatrix& g) { return g.is_identity(); };
    H.key = [&G](const IntMatrix& g) { return G.encode(g); };
    return H;
  }
  BigInt c = x(ti, tj);
  auto key = [&G, ti, tj, c](const IntMatrix& g) {
    IntVector gen = g.column(ti);
    for (auto& e : gen) e *= c;
    auto hnf = hermite_normal_form({gen}, static_cast<std::size_t>(g.n));
    IntVector col = reduce_mod_lattice(hnf, g.column(tj));
    IntMatrix out = g;
    for (int i = 0; i < g.n; ++i) out(i, tj) = col[static_cast<std::size_t>(i)];
    return G.encode(out);
  };
  H.key = key;
  std::string base = key(G.identity());
  H.membership = [key, base](const IntMatrix& g) { return key(g) == base; };
  return H;
}

/// Homomorphism from F_r given by images of the letters.
template <GroupModel Q>
std::function<Element<Q>(const Word&)> free_hom(const Q& target, std::vector<Element<Q>> images) {
  std::vector<Element<Q>> inv;
  for (const auto& x : images) inv.push_back(target.inverse(x));
  return [&target, images, inv](const Word& w) {
    Element<Q> g = target.identity();
    for (std::size_t i = 0; i < w.size(); ++i) {
      int x = w.at(i);
      g = target.multiply(g, x > 0 ? images[static_cast<std::size_t>(x - 1)] : inv[static_cast<std::size_t>(-x - 1)]);
    }
    return g;
  };
}

/// H = pi^-1(L): membership and keys are those of L applied to pi(g).
template <GroupModel M, GroupModel Q>
SubgroupOracle<M> pullback(std::function<Element<Q>(const Element<M>&)> pi, SubgroupOracle<Q> inner) {
  SubgroupOracle<M> H;
  H.family = OracleFamily::Pullback;
  H.name = "pullback(" + inner.name + ")";
  auto shared = std::make_shared<SubgroupOracle<Q>>(std::move(inner));
  H.membership = [pi, shared](const Element<M>& g) { return shared->contains(pi(g)); };
  if (shared->has_key()) H.key = [pi, shared](const Element<M>& g) { return shared->key(pi(g)); };
  return H;
}

}  // namespace cwl
