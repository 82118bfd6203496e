#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"
#include "cwl/group/ball.hpp"
#include "cwl/walk/distribution.hpp"

namespace cwl {

/// Finitely supported function on G with the word length of each support point.
template <GroupModel M, MassValue V = double>
class FinFunc {
 public:
  using value_type = V;

  void add(const Element<M>& g, const V& v, std::uint32_t length) {
    auto [it, fresh] = index_.emplace(g, elements_.size());
    if (fresh) {
      elements_.push_back(g);
      values_.push_back(v);
      lengths_.push_back(length);
      radius_ = std::max<std::size_t>(radius_, length);
    } else {
      values_[it->second] += v;
    }
  }

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t radius() const noexcept { return radius_; }
  const Element<M>& element(std::size_t i) const { return elements_[i]; }
  const V& value(std::size_t i) const { return values_[i]; }
  std::uint32_t length(std::size_t i) const { return lengths_[i]; }

  bool contains(const Element<M>& g) const { return index_.count(g) != 0; }

  V at(const Element<M>& g) const {
    auto it = index_.find(g);
    return it == index_.end() ? V(0) : values_[it->second];
  }

  FinFunc scaled(const V& c) const {
    FinFunc out = *this;
    for (auto& v : out.values_) v *= c;
    return out;
  }

 private:
  std::vector<Element<M>> elements_;
  std::vector<V> values_;
  std::vector<std::uint32_t> lengths_;
  std::unordered_map<Element<M>, std::size_t, typename M::hasher> index_;
  std::size_t radius_ = 0;
};

template <MassValue V>
V abs_value(const V& v) {
  if constexpr (is_exact_v<V>) {
    return v < 0 ? V(-v) : v;
  } else {
    return std::abs(v);
  }
}

template <GroupModel M, MassValue V = double>
FinFunc<M, V> delta(const Element<M>& g, LengthOracle<M>& lengths, std::size_t cap = 64) {
  FinFunc<M, V> f;
  auto l = lengths.length(g, cap);
  if (!l) throw Error("delta: element longer than cap");
  f.add(g, V(1), static_cast<std::uint32_t>(*l));
  return f;
}

/// Indicator of a finite set; lengths are looked up with the given cap.
template <GroupModel M, MassValue V = double>
FinFunc<M, V> indicator(const std::vector<Element<M>>& set, LengthOracle<M>& lengths, std::size_t cap) {
  FinFunc<M, V> f;
  for (const auto& g : set) {
    auto l = lengths.length(g, cap);
    if (!l) throw Error("indicator: element longer than cap");
    f.add(g, V(1), static_cast<std::uint32_t>(*l));
  }
  return f;
}

template <GroupModel M, MassValue V>
FinFunc<M, V> from_lifted(const LiftedDistribution<M, V>& lambda) {
  FinFunc<M, V> f;
  for (std::size_t i = 0; i < lambda.size(); ++i) f.add(lambda.elements[i], lambda.mass[i], lambda.lengths[i]);
  return f;
}

/// Exact convolution (f*phi)(x) = sum_y f(y) phi(y^-1 x) on G.
template <GroupModel M, MassValue V>
FinFunc<M, V> convolve_funcs(const M& model, const FinFunc<M, V>& f, const FinFunc<M, V>& phi,
                             LengthOracle<M>& lengths, const Budget& budget = {}) {
  FinFunc<M, V> out;
  const std::size_t cap = f.radius() + phi.radius();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < phi.size(); ++j) {
      Element<M> g = model.multiply(f.element(i), phi.element(j));
      std::uint32_t l = 0;
      if (!out.contains(g)) {
        auto len = lengths.length(g, cap);
        if (!len) throw Error("convolve_funcs: product longer than sum of radii");
        l = static_cast<std::uint32_t>(*len);
      }
      out.add(g, f.value(i) * phi.value(j), l);
      if (out.size() > budget.max_elements) throw BudgetExceeded(cap, budget.max_elements);
    }
  }
  return out;
}

}  // namespace cwl
