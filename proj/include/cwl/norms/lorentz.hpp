#pragma once

#include <cmath>
#include <map>
#include <random>
#include <unordered_map>
#include <vector>

#include "cwl/coset/coset_space.hpp"
#include "cwl/norms/finfunc.hpp"
#include "cwl/walk/entropy.hpp"

namespace cwl {

/// Fiber sums of |f| over cosets, sorted by coset id.
template <GroupModel M, MassValue V>
std::vector<std::pair<CosetId, V>> fiber_sums(const FinFunc<M, V>& f, CosetSpace<M>& X) {
  std::map<CosetId, V> b;
  for (std::size_t i = 0; i < f.size(); ++i) b[X.id_of(f.element(i))] += abs_value(f.value(i));
  return {b.begin(), b.end()};
}

/// Exact sum over cosets of (fiber sum)^q.
template <GroupModel M, MassValue V>
V lorentz_power_sum(const FinFunc<M, V>& f, CosetSpace<M>& X, unsigned q) {
  V total = 0;
  for (const auto& [x, b] : fiber_sums(f, X)) {
    if constexpr (is_exact_v<V>) {
      total += rational_pow(b, q);
    } else {
      total += std::pow(b, static_cast<double>(q));
    }
  }
  return total;
}

/// ||f||_{(q,1)}: l^q over cosets of the l^1 fiber sums.
template <GroupModel M, MassValue V>
double lorentz_norm(const FinFunc<M, V>& f, CosetSpace<M>& X, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lorentz_norm: q must be >= 1");
  std::vector<std::pair<CosetId, V>> b = fiber_sums(f, X);
  // Scale by the largest fiber sum to stay in range for huge or tiny values.
  long double top = -std::numeric_limits<long double>::infinity();
  for (const auto& [x, v] : b) {
    if (v != V(0)) top = std::max<long double>(top, log_of(v));
  }
  if (b.empty() || std::isinf(top)) return 0.0;
  long double s = 0;
  for (const auto& [x, v] : b) {
    if (v != V(0)) s += std::exp(static_cast<long double>(q) * (log_of(v) - top));
  }
  return static_cast<double>(std::exp(top + std::log(s) / q));
}

enum class HerzRoute { Convolution, Pushforward };

template <MassValue V>
struct HerzBound {
  double value = 0;     // lower bound for ||f||_h
  V numerator_sq = 0;   // ||f*phi||_{(2,1)}^2
  V denominator_sq = 0; // ||phi||_{(2,1)}^2
  HerzRoute route = HerzRoute::Convolution;
};

namespace detail {

template <MassValue V>
V square_sum(const std::vector<std::pair<CosetId, V>>& b) {
  V s = 0;
  for (const auto& [x, v] : b) s += v * v;
  return s;
}

template <MassValue V>
double sqrt_ratio(const V& num, const V& den) {
  if (num == V(0)) return 0.0;
  return static_cast<double>(std::exp(0.5L * (log_of(num) - log_of(den))));
}

}  // namespace detail

/// ||f*phi||_{(2,1)} / ||phi||_{(2,1)}, a certified lower bound for the Herz norm of f.
/// The pushforward route uses pi_#(f*phi) = lambda_X(f) pi_#(phi) and needs f, phi >= 0.
template <GroupModel M, MassValue V>
HerzBound<V> herz_lower(const FinFunc<M, V>& f, const FinFunc<M, V>& phi, CosetSpace<M>& X,
                        HerzRoute route = HerzRoute::Convolution, const Budget& budget = {}) {
  HerzBound<V> out;
  out.route = route;
  auto phi_b = fiber_sums(phi, X);
  out.denominator_sq = detail::square_sum(phi_b);
  if (out.denominator_sq == V(0)) throw ZeroDenominator("phi has zero (2,1)-norm");
  const M& model = X.model();
  std::map<CosetId, V> conv;
  if (route == HerzRoute::Convolution) {
    std::unordered_map<Element<M>, V, typename M::hasher> prod;
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < phi.size(); ++j) {
        prod[model.multiply(f.element(i), phi.element(j))] += f.value(i) * phi.value(j);
        if (prod.size() > budget.max_elements) throw BudgetExceeded(f.radius() + phi.radius(), budget.max_elements);
      }
    }
    for (const auto& [g, v] : prod) conv[X.id_of(g)] += abs_value(v);
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.value(i) < V(0)) throw std::invalid_argument("herz_lower: pushforward route needs f >= 0");
    }
    for (std::size_t j = 0; j < phi.size(); ++j) {
      if (phi.value(j) < V(0)) throw std::invalid_argument("herz_lower: pushforward route needs phi >= 0");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (const auto& [x, b] : phi_b) conv[X.act(f.element(i), x)] += f.value(i) * b;
    }
  }
  out.numerator_sq = detail::square_sum(std::vector<std::pair<CosetId, V>>(conv.begin(), conv.end()));
  out.value = detail::sqrt_ratio(out.numerator_sq, out.denominator_sq);
  return out;
}

/// Cosets within Schreier distance radius of the origin, in BFS order.
template <GroupModel M>
std::vector<CosetId> schreier_ball_members(CosetSpace<M>& X, std::size_t radius, const Budget& budget = {}) {
  std::vector<CosetId> members = {X.origin()};
  std::vector<std::uint8_t> seen(X.size(), 0);
  seen[X.origin()] = 1;
  schreier_ball(X, radius, budget, [&](const SchreierEdge& e) {
    if (seen.size() <= e.dst) seen.resize(static_cast<std::size_t>(e.dst) + 1, 0);
    if (!seen[e.dst]) {
      seen[e.dst] = 1;
      members.push_back(e.dst);
    }
  });
  return members;
}

struct OpnormBound {
  double value = 0;   // lower bound for ||lambda_{X,q}(f)||_{q->q}
  long best_trial = -1;  // -1: attained by delta at the origin
  std::size_t vectors = 0;
};

/// max ||lambda_X(f) xi||_q / ||xi||_q over delta_o and random nonnegative xi on B_X(radius).
template <GroupModel M, MassValue V>
OpnormBound opnorm_lower(const FinFunc<M, V>& f, CosetSpace<M>& X, double q, std::size_t radius,
                         std::size_t trials, std::uint64_t seed, const Budget& budget = {}) {
  if (!(q > 1.0 && q <= 2.0)) throw std::invalid_argument("opnorm_lower: q must lie in (1,2]");
  const auto members = schreier_ball_members(X, radius, budget);
  auto qnorm = [q](const std::map<CosetId, double>& v) {
    long double s = 0;
    for (const auto& [x, a] : v) s += std::pow(std::abs(static_cast<long double>(a)), static_cast<long double>(q));
    return std::pow(s, 1.0L / q);
  };
  auto apply = [&](const std::map<CosetId, double>& xi) {
    std::map<CosetId, double> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double fv = to_double(f.value(i));
      for (const auto& [x, a] : xi) out[X.act(f.element(i), x)] += fv * a;
    }
    return out;
  };
  OpnormBound best;
  std::map<CosetId, double> xi = {{X.origin(), 1.0}};
  best.value = static_cast<double>(qnorm(apply(xi)));
  best.vectors = 1;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(splitmix64(seed + t));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    xi.clear();
    for (CosetId x : members) xi[x] = unif(rng);
    const long double den = qnorm(xi);
    if (den == 0) continue;
    const double r = static_cast<double>(qnorm(apply(xi)) / den);
    ++best.vectors;
    if (r > best.value) {
      best.value = r;
      best.best_trial = static_cast<long>(t);
    }
  }
  return best;
}

}  // namespace cwl
