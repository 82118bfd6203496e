#pragma once

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cwl/coset/coset_space.hpp"
#include "cwl/walk/measure.hpp"

namespace cwl {

/// Finitely supported distribution on X = G/H, sorted by coset id.
template <MassValue V>
struct CosetDistribution {
  std::vector<std::pair<CosetId, V>> mass;
  std::size_t step = 0;

  std::size_t support_size() const { return mass.size(); }

  V total() const {
    if constexpr (is_exact_v<V>) {
      V t = 0;
      for (const auto& [x, m] : mass) t += m;
      return t;
    } else {
      KahanSum<double> t;
      for (const auto& [x, m] : mass) t.add(m);
      return t.value();
    }
  }

  static CosetDistribution point_mass(CosetId x) {
    CosetDistribution d;
    d.mass.emplace_back(x, V(1));
    return d;
  }
};

namespace detail {

/// Dense scatter accumulator keyed by coset id.
template <MassValue V>
class Accumulator {
 public:
  void add(CosetId y, const V& v) {
    if (slots_.size() <= y) {
      slots_.resize(static_cast<std::size_t>(y) + 1);
      if constexpr (!is_exact_v<V>) comp_.resize(static_cast<std::size_t>(y) + 1, 0.0);
      used_.resize(static_cast<std::size_t>(y) + 1, 0);
    }
    if (!used_[y]) {
      used_[y] = 1;
      touched_.push_back(y);
      slots_[y] = 0;
      if constexpr (!is_exact_v<V>) comp_[y] = 0.0;
    }
    if constexpr (is_exact_v<V>) {
      slots_[y] += v;
    } else {
      // Kahan-compensated accumulation per target.
      double t = slots_[y];
      double yv = v - comp_[y];
      double s = t + yv;
      comp_[y] = (s - t) - yv;
      slots_[y] = s;
    }
  }

  std::vector<std::pair<CosetId, V>> take() {
    std::sort(touched_.begin(), touched_.end());
    std::vector<std::pair<CosetId, V>> out;
    out.reserve(touched_.size());
    for (CosetId y : touched_) {
      used_[y] = 0;
      if (slots_[y] > 0) out.emplace_back(y, std::move(slots_[y]));
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<V> slots_;
  std::vector<double> comp_;
  std::vector<std::uint8_t> used_;
  std::vector<CosetId> touched_;
};

}  // namespace detail

/// nu'(x) = sum_g mu(g) nu(g^-1 x), realized by scattering x -> g x.
template <GroupModel M, MassValue V>
CosetDistribution<V> convolve_step(const Measure<M, V>& mu, const CosetDistribution<V>& nu, CosetSpace<M>& X,
                                   const Budget& budget = {}) {
  std::vector<std::size_t> letters;
  for (const auto& g : mu.support) letters.push_back(X.register_letter(g));
  detail::Accumulator<V> acc;
  for (const auto& [x, m] : nu.mass) {
    for (std::size_t i = 0; i < letters.size(); ++i) acc.add(X.act_letter(letters[i], x), mu.weights[i] * m);
  }
  CosetDistribution<V> out;
  out.mass = acc.take();
  out.step = nu.step + 1;
  if (out.mass.size() > budget.max_elements) throw BudgetExceeded(out.step, budget.max_elements);
  return out;
}

/// nu_0 .. nu_n starting from the point mass at o.
template <GroupModel M, MassValue V>
std::vector<CosetDistribution<V>> walk_series(const Measure<M, V>& mu, CosetSpace<M>& X, std::size_t n,
                                              const Budget& budget = {}) {
  std::vector<CosetDistribution<V>> out;
  out.push_back(CosetDistribution<V>::point_mass(X.origin()));
  for (std::size_t k = 1; k <= n; ++k) out.push_back(convolve_step(mu, out.back(), X, budget));
  return out;
}

/// mu^{*n} on G with the exact word length of every support element.
template <GroupModel M, MassValue V>
struct LiftedDistribution {
  std::vector<Element<M>> elements;
  std::vector<V> mass;
  std::vector<std::uint32_t> lengths;
  std::size_t step = 0;

  std::size_t size() const { return elements.size(); }

  static LiftedDistribution identity(const M& model) {
    LiftedDistribution d;
    d.elements.push_back(model.identity());
    d.mass.push_back(V(1));
    d.lengths.push_back(0);
    return d;
  }
};

/// mu^{*(n+1)} from mu^{*n}: Z_{n+1} = s Z_n.
template <GroupModel M, MassValue V>
LiftedDistribution<M, V> convolve_lifted(const M& model, const Measure<M, V>& mu,
                                         const LiftedDistribution<M, V>& lambda, LengthOracle<M>& lengths,
                                         const Budget& budget = {}) {
  LiftedDistribution<M, V> out;
  out.step = lambda.step + 1;
  std::unordered_map<Element<M>, std::size_t, typename M::hasher> index;
  const std::size_t cap = out.step * std::max<std::size_t>(mu.radius, 1);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      Element<M> h = model.multiply(mu.support[i], lambda.elements[j]);
      V m = mu.weights[i] * lambda.mass[j];
      auto [it, fresh] = index.emplace(h, out.elements.size());
      if (fresh) {
        auto l = lengths.length(h, cap);
        if (!l) throw Error("support element beyond n R");
        out.elements.push_back(std::move(h));
        out.mass.push_back(std::move(m));
        out.lengths.push_back(static_cast<std::uint32_t>(*l));
        if (out.elements.size() > budget.max_elements) throw BudgetExceeded(out.step, budget.max_elements);
      } else {
        out.mass[it->second] += m;
      }
    }
  }
  return out;
}

/// Pushforward pi_#: sums lifted mass over cosets.
template <GroupModel M, MassValue V>
CosetDistribution<V> pushforward(const LiftedDistribution<M, V>& lambda, CosetSpace<M>& X) {
  detail::Accumulator<V> acc;
  for (std::size_t i = 0; i < lambda.size(); ++i) acc.add(X.id_of(lambda.elements[i]), lambda.mass[i]);
  CosetDistribution<V> out;
  out.mass = acc.take();
  out.step = lambda.step;
  return out;
}

}  // namespace cwl
