#pragma once

#include <string>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"
#include "cwl/group/ball.hpp"

namespace cwl {

/// Finitely supported probability measure on a group.
template <GroupModel M, MassValue V>
struct Measure {
  std::vector<Element<M>> support;
  std::vector<V> weights;
  bool symmetric = false;
  std::size_t radius = 0;  // max word length over the support

  std::size_t size() const { return support.size(); }
};

namespace detail {

template <MassValue V>
V mass_from_rational(const Rational& r) {
  if constexpr (is_exact_v<V>) {
    return r;
  } else {
    return to_double(r);
  }
}

template <GroupModel M, MassValue V>
void finish_measure(const M& model, Measure<M, V>& mu) {
  if (mu.support.empty()) throw Error("measure has empty support");
  V total = 0;
  for (const auto& w : mu.weights) {
    if (!(w > 0)) throw Error("measure weights must be positive");
    total += w;
  }
  if constexpr (is_exact_v<V>) {
    if (total != 1) throw Error("measure weights sum to " + total.str() + ", not 1");
  } else {
    if (std::abs(total - 1.0) > 1e-12) throw Error("measure weights do not sum to 1");
  }
  LengthOracle<M> lengths(model);
  mu.radius = 0;
  for (const auto& g : mu.support) {
    std::optional<std::size_t> l;
    for (std::size_t cap = 1; !l && cap <= 64; cap *= 2) l = lengths.length(g, cap);
    if (!l) throw Error("measure support element beyond length 64");
    mu.radius = std::max(mu.radius, *l);
  }
  mu.symmetric = true;
  for (std::size_t i = 0; i < mu.support.size() && mu.symmetric; ++i) {
    Element<M> inv = model.inverse(mu.support[i]);
    bool found = false;
    for (std::size_t j = 0; j < mu.support.size(); ++j) {
      if (mu.support[j] == inv && mu.weights[j] == mu.weights[i]) found = true;
    }
    mu.symmetric = found;
  }
}

}  // namespace detail

/// Simple random walk: uniform on the generating list.
template <MassValue V, GroupModel M>
Measure<M, V> simple_random_walk(const M& model) {
  Measure<M, V> mu;
  const auto& gens = model.generators();
  Rational w = Rational(1) / Rational(static_cast<long>(gens.size()));
  for (const auto& s : gens) {
    mu.support.push_back(s);
    mu.weights.push_back(detail::mass_from_rational<V>(w));
  }
  detail::finish_measure(model, mu);
  return mu;
}

/// Measure with explicit rational weights; repeated elements are merged.
template <MassValue V, GroupModel M>
Measure<M, V> measure_from_weights(const M& model, const std::vector<std::pair<Element<M>, Rational>>& items) {
  Measure<M, V> mu;
  std::vector<Rational> exact;
  for (const auto& [g, w] : items) {
    if (w <= 0) throw Error("measure weights must be positive");
    bool merged = false;
    for (std::size_t i = 0; i < mu.support.size(); ++i) {
      if (mu.support[i] == g) {
        exact[i] += w;
        merged = true;
      }
    }
    if (!merged) {
      mu.support.push_back(g);
      exact.push_back(w);
    }
  }
  Rational total = 0;
  for (const auto& w : exact) total += w;
  if (total != 1) throw Error("measure weights sum to " + total.str() + ", not 1");
  for (const auto& w : exact) mu.weights.push_back(detail::mass_from_rational<V>(w));
  detail::finish_measure(model, mu);
  return mu;
}

/// Shannon entropy of the measure's weights (natural log).
template <GroupModel M, MassValue V>
double measure_entropy(const Measure<M, V>& mu) {
  long double h = 0;
  for (const auto& w : mu.weights) {
    long double p = to_double(w);
    h -= p * std::log(p);
  }
  return static_cast<double>(h);
}

}  // namespace cwl
