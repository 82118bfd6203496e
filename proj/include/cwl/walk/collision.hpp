#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cwl/walk/distribution.hpp"

namespace cwl {

struct CollisionEstimate {
  double collision_probability = 0;  // estimate of sum_x nu_n(x)^2
  double h2 = 0;                     // -log of the estimate
  double h2_lo = 0;                  // 95% normal-approximation interval for H_2
  double h2_hi = 0;
  std::size_t collisions = 0;
  std::size_t trials = 0;
  bool zero_collisions = false;  // then only h2_lo = log(trials / 3) is meaningful
};

/// Collision frequency of paired independent n-step walks from o. Trial t uses
/// its own mt19937_64 seeded from splitmix64(seed + t).
template <GroupModel M, MassValue V>
CollisionEstimate mc_collision_renyi2(CosetSpace<M>& X, const Measure<M, V>& mu, std::size_t n, std::size_t trials,
                                      std::uint64_t seed) {
  if (trials < 1000) throw Error("collision estimate needs at least 1000 trials");
  std::vector<std::size_t> letters;
  std::vector<double> w;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    letters.push_back(X.register_letter(mu.support[i]));
    w.push_back(to_double(mu.weights[i]));
  }
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  auto walk = [&](std::mt19937_64& rng) {
    CosetId x = X.origin();
    for (std::size_t k = 0; k < n; ++k) x = X.act_letter(letters[pick(rng)], x);
    return x;
  };
  CollisionEstimate out;
  out.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(splitmix64(seed + t));
    pick.reset();
    CosetId a = walk(rng);
    CosetId b = walk(rng);
    if (a == b) ++out.collisions;
  }
  const double T = static_cast<double>(trials);
  if (out.collisions == 0) {
    out.zero_collisions = true;
    out.h2_lo = std::log(T / 3.0);
    out.h2 = out.h2_lo;
    out.h2_hi = std::numeric_limits<double>::infinity();
    return out;
  }
  double p = static_cast<double>(out.collisions) / T;
  double half = 1.96 * std::sqrt(p * (1 - p) / T);
  out.collision_probability = p;
  out.h2 = -std::log(p);
  out.h2_lo = -std::log(std::min(1.0, p + half));
  out.h2_hi = p - half > 0 ? -std::log(p - half) : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace cwl
