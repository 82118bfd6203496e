#pragma once

#include <cmath>
#include <vector>

#include "cwl/walk/distribution.hpp"

namespace cwl {

/// Per-coset weighted moments of mu^{*n}:
///   a_{n,p}(x) = sum_{gH = x} mu^{*n}(g) (1 + l(g))^{s/p}
///   omega_n(x) = E[(1 + l(Z_n))^s | X_n = x]
template <MassValue V>
struct WeightedDiagnostic {
  std::vector<std::pair<CosetId, V>> nu;     // pi_# mu^{*n}
  std::vector<std::pair<CosetId, V>> a;      // a_{n,p}; exact only when s/p is an integer
  std::vector<std::pair<CosetId, V>> omega;  // omega_n; exact when s is an integer
  bool jensen_ok = true;                     // a <= nu * omega^{1/p} everywhere
  bool omega_bounds_ok = true;               // 1 <= omega <= (1 + nR)^s everywhere
  bool exact = false;
  std::size_t violations = 0;
};

namespace detail {

inline bool is_integral(double x) { return x >= 0 && std::floor(x) == x && x < 64; }

}  // namespace detail

/// Exact rational comparison (a^p <= nu^{p-1} * sum mu (1+l)^s) when s/p and p are
/// integers; otherwise long double with relative tolerance 1e-12.
template <GroupModel M, MassValue V>
WeightedDiagnostic<V> weighted_diagnostic(const LiftedDistribution<M, V>& lambda, CosetSpace<M>& X, double s,
                                          double p, std::size_t radius) {
  WeightedDiagnostic<V> out;
  const std::size_t n = lambda.step;
  const bool exact_path = is_exact_v<V> && detail::is_integral(s) && detail::is_integral(p) &&
                          detail::is_integral(s / p) && p >= 1;
  out.exact = exact_path;

  // Group lifted mass by coset.
  std::vector<CosetId> ids(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) ids[i] = X.id_of(lambda.elements[i]);
  std::vector<std::size_t> order(lambda.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ids[i] < ids[j]; });

  if constexpr (is_exact_v<V>) {
    if (exact_path) {
      const auto si = static_cast<unsigned>(s);
      const auto pi = static_cast<unsigned>(p);
      const auto sp = static_cast<unsigned>(s / p);
      BigInt bound = boost::multiprecision::pow(BigInt(1 + n * radius), si);
      std::size_t k = 0;
      while (k < order.size()) {
        CosetId x = ids[order[k]];
        Rational nu = 0, a = 0, moment = 0;
        for (; k < order.size() && ids[order[k]] == x; ++k) {
          std::size_t i = order[k];
          BigInt base = 1 + lambda.lengths[i];
          nu += lambda.mass[i];
          a += lambda.mass[i] * Rational(boost::multiprecision::pow(base, sp));
          moment += lambda.mass[i] * Rational(boost::multiprecision::pow(base, si));
        }
        Rational omega = moment / nu;
        // a <= nu omega^{1/p}  <=>  a^p <= nu^{p-1} * moment.
        Rational lhs = rational_pow(a, pi);
        Rational rhs = rational_pow(nu, pi - 1) * moment;
        if (lhs > rhs) {
          out.jensen_ok = false;
          ++out.violations;
        }
        if (omega < 1 || omega > Rational(bound)) {
          out.omega_bounds_ok = false;
          ++out.violations;
        }
        out.nu.emplace_back(x, nu);
        out.a.emplace_back(x, a);
        out.omega.emplace_back(x, omega);
      }
      return out;
    }
  }
  const long double bound = std::pow(static_cast<long double>(1 + n * radius), static_cast<long double>(s));
  std::size_t k = 0;
  while (k < order.size()) {
    CosetId x = ids[order[k]];
    long double nu = 0, a = 0, moment = 0;
    for (; k < order.size() && ids[order[k]] == x; ++k) {
      std::size_t i = order[k];
      long double m = to_double(lambda.mass[i]);
      long double base = 1.0L + lambda.lengths[i];
      nu += m;
      a += m * std::pow(base, static_cast<long double>(s / p));
      moment += m * std::pow(base, static_cast<long double>(s));
    }
    long double omega = moment / nu;
    if (a > nu * std::pow(omega, 1.0L / p) * (1 + 1e-12L)) {
      out.jensen_ok = false;
      ++out.violations;
    }
    if (omega < 1 - 1e-12L || omega > bound * (1 + 1e-12L)) {
      out.omega_bounds_ok = false;
      ++out.violations;
    }
    out.nu.emplace_back(x, V(static_cast<double>(nu)));
    out.a.emplace_back(x, V(static_cast<double>(a)));
    out.omega.emplace_back(x, V(static_cast<double>(omega)));
  }
  return out;
}

}  // namespace cwl
