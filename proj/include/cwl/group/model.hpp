#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cwl/group/free_abelian.hpp"
#include "cwl/group/free_group.hpp"
#include "cwl/group/matrix_group.hpp"

namespace cwl {

/// A concrete finitely generated group with canonical element encodings
/// and a symmetric generating list.
template <class M>
concept GroupModel = requires(const M& m, const typename M::element_type& g, const std::string& bytes) {
  typename M::hasher;
  { m.identity() } -> std::same_as<typename M::element_type>;
  { m.multiply(g, g) } -> std::same_as<typename M::element_type>;
  { m.inverse(g) } -> std::same_as<typename M::element_type>;
  { m.generators() } -> std::convertible_to<const std::vector<typename M::element_type>&>;
  { m.generator_labels() } -> std::convertible_to<const std::vector<std::string>&>;
  { m.encode(g) } -> std::same_as<std::string>;
  { m.decode(bytes) } -> std::same_as<typename M::element_type>;
  { m.model_hash() } -> std::same_as<std::uint64_t>;
  { m.format(g) } -> std::same_as<std::string>;
  { m.describe() } -> std::same_as<std::string>;
};

template <GroupModel M>
using Element = typename M::element_type;

/// Models whose word length has a closed form.
template <class M>
concept ClosedFormLength = GroupModel<M> && requires(const M& m, const typename M::element_type& g) {
  { m.word_length(g, std::size_t{0}) } -> std::same_as<std::optional<std::size_t>>;
};

static_assert(GroupModel<FreeGroup>);
static_assert(GroupModel<FreeAbelian>);
static_assert(GroupModel<MatrixGroupZ>);

/// Product of a word of generator indices, left to right.
template <GroupModel M>
Element<M> evaluate_word(const M& model, const std::vector<std::size_t>& gen_indices) {
  Element<M> g = model.identity();
  for (auto i : gen_indices) g = model.multiply(g, model.generators().at(i));
  return g;
}

}  // namespace cwl

namespace cwl {

template <class M>
concept CheckedModel = GroupModel<M> && requires(const M& m, const typename M::element_type& g) { m.check(g); };

/// Group law with operand validation (MixedModel / NonUnimodular on bad input).
template <GroupModel M>
Element<M> checked_multiply(const M& model, const Element<M>& a, const Element<M>& b) {
  if constexpr (CheckedModel<M>) {
    model.check(a);
    model.check(b);
  }
  return model.multiply(a, b);
}

template <GroupModel M>
Element<M> checked_inverse(const M& model, const Element<M>& a) {
  if constexpr (CheckedModel<M>) model.check(a);
  return model.inverse(a);
}

/// Uniform random word of the given length in the model's generators.
template <GroupModel M, class Rng>
Element<M> random_word_element(const M& model, std::size_t length, Rng& rng) {
  Element<M> g = model.identity();
  const auto& gens = model.generators();
  for (std::size_t i = 0; i < length; ++i) g = model.multiply(g, gens[rng() % gens.size()]);
  return g;
}

}  // namespace cwl
