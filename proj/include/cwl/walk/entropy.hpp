#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "cwl/walk/distribution.hpp"

namespace cwl {

struct EntropyProfile {
  double shannon = 0;                  // H(nu)
  std::map<double, double> renyi;      // alpha -> H_alpha(nu)
  std::map<double, double> qnorm;      // q -> ||nu||_q
  std::map<double, double> log_qnorm;  // q -> log ||nu||_q
};

/// sum_x nu(x)^q in long double; works for masses far below the double range.
template <MassValue V>
long double power_sum(const std::vector<std::pair<CosetId, V>>& mass, double q) {
  long double s = 0;
  for (const auto& [x, m] : mass) s += std::exp(static_cast<long double>(q) * log_of(m));
  return s;
}

/// Natural-log Shannon and Renyi entropies plus q-norms (0 log 0 = 0).
template <MassValue V>
EntropyProfile entropy_profile(const CosetDistribution<V>& nu, const std::vector<double>& alphas,
                               const std::vector<double>& qs = {}) {
  EntropyProfile out;
  long double h = 0;
  for (const auto& [x, m] : nu.mass) {
    long double lp = log_of(m);
    h -= std::exp(lp) * lp;
  }
  out.shannon = static_cast<double>(h);
  for (double a : alphas) {
    if (a <= 0 || a == 1) throw Error("Renyi order must be positive and different from 1");
    out.renyi[a] = static_cast<double>(std::log(power_sum(nu.mass, a)) / (1.0L - a));
  }
  for (double q : qs) {
    if (q < 1) throw Error("q-norm needs q >= 1");
    long double lg = std::log(power_sum(nu.mass, q)) / q;
    out.log_qnorm[q] = static_cast<double>(lg);
    out.qnorm[q] = static_cast<double>(std::exp(lg));
  }
  return out;
}

/// Conjugate exponent p = q/(q-1).
inline double conjugate_exponent(double q) { return q / (q - 1.0); }

}  // namespace cwl
