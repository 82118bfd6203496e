#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/group/model.hpp"

namespace cwl {

enum class OracleFamily {
  Trivial,
  WholeGroup,
  FreeGroupGens,
  Unitriangular,
  LineStabilizer,
  SubspaceStabilizer,
  CongruenceLevel,
  Custom,
  Pullback,
  CyclicPowers,
  Sublattice,
};

inline std::string to_string(OracleFamily f) {
  switch (f) {
    case OracleFamily::Trivial: return "Trivial";
    case OracleFamily::WholeGroup: return "WholeGroup";
    case OracleFamily::FreeGroupGens: return "FreeGroupGens";
    case OracleFamily::Unitriangular: return "UT";
    case OracleFamily::LineStabilizer: return "LineStabilizer";
    case OracleFamily::SubspaceStabilizer: return "SubspaceStabilizer";
    case OracleFamily::CongruenceLevel: return "CongruenceLevel";
    case OracleFamily::Custom: return "Custom";
    case OracleFamily::Pullback: return "Pullback";
    case OracleFamily::CyclicPowers: return "CyclicPowers";
    case OracleFamily::Sublattice: return "Sublattice";
  }
  return "?";
}

/// A subgroup H of a model: membership predicate, optional canonical left-coset
/// key (key(g) == key(g') iff g^-1 g' in H) and optional generators.
template <GroupModel M>
struct SubgroupOracle {
  OracleFamily family = OracleFamily::Custom;
  std::string name;
  std::function<bool(const Element<M>&)> membership;
  std::function<std::string(const Element<M>&)> key;
  std::vector<Element<M>> generators;
  std::optional<BigInt> level;  // congruence level, when the family has one

  bool contains(const Element<M>& g) const {
    if (!membership) throw UnsupportedFamily("oracle '" + name + "' has no membership predicate");
    return membership(g);
  }

  bool has_key() const { return static_cast<bool>(key); }
};

/// Spot-checks the subgroup axioms and key soundness on random samples; throws InvalidOracle.
template <GroupModel M>
void validate_oracle(const M& model, const SubgroupOracle<M>& H, std::uint64_t seed = 0x5eed,
                     std::size_t triples = 200) {
  if (!H.membership) return;
  std::mt19937_64 rng(seed);
  auto fail = [&](const std::string& what, const Element<M>& g) {
    throw InvalidOracle("oracle '" + H.name + "': " + what + " at " + model.format(g));
  };
  auto sample_any = [&] { return random_word_element(model, rng() % 7, rng); };
  auto sample_member = [&]() -> std::optional<Element<M>> {
    if (!H.generators.empty()) {
      Element<M> h = model.identity();
      std::size_t len = rng() % 5;
      for (std::size_t i = 0; i < len; ++i) {
        const auto& s = H.generators[rng() % H.generators.size()];
        h = model.multiply(h, rng() % 2 ? s : model.inverse(s));
      }
      return h;
    }
    for (int tries = 0; tries < 20; ++tries) {
      Element<M> g = sample_any();
      if (H.contains(g)) return g;
    }
    return std::nullopt;
  };

  if (!H.contains(model.identity())) fail("identity is not a member", model.identity());
  for (std::size_t t = 0; t < triples; ++t) {
    auto h1 = sample_member();
    auto h2 = sample_member();
    if (h1) {
      if (!H.contains(*h1)) fail("product of generators rejected", *h1);
      if (!H.contains(model.inverse(*h1))) fail("not closed under inverse", *h1);
    }
    if (h1 && h2 && !H.contains(model.multiply(*h1, *h2))) fail("not closed under product", *h1);
    if (H.has_key()) {
      Element<M> g = sample_any();
      Element<M> g2 = sample_any();
      if (h1 && H.key(g) != H.key(model.multiply(g, *h1))) fail("key differs within a coset", g);
      bool same = H.key(g) == H.key(g2);
      if (same != H.contains(model.multiply(model.inverse(g), g2))) fail("key disagrees with membership", g);
    }
  }
}

}  // namespace cwl
