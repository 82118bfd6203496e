#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cwl/core/format.hpp"
#include "cwl/walk/entropy.hpp"
#include "cwl/walk/measure.hpp"
#include "cwl/walk/rate_fit.hpp"

namespace cwl {

struct SpectralRow {
  double q = 0;
  double p = 0;
  RateFit fit;            // fit of log ||nu_n||_q against n
  double r_q_raw = 0;     // exp(slope) before clamping
  double r_q = 0;         // clamped to (0,1]
  double stderr_log = 0;  // stderr of log r_q
  double minus_p_log_rq = 0;
  double h_alpha = 0;     // (q/(1-q)) log r_q
};

struct SpectralProfile {
  std::vector<SpectralRow> rows;  // ascending p
  double c_estimate = 0;          // -p log r_q at the largest p
  bool monotone_ok = true;
  std::vector<std::string> monotone_violations;
  bool per_n_bound_ok = true;
  std::vector<std::string> per_n_violations;
  std::size_t n_max = 0;
};

/// Spectral profile from a precomputed walk series nu_0..nu_n. mu_entropy is H(mu),
/// used for the per-n bound ||nu_n||_q^{1/n} >= exp((1-q)/q H(mu)).
template <MassValue V>
SpectralProfile spectral_profile_from_series(const std::vector<CosetDistribution<V>>& series, double mu_entropy,
                                             std::vector<double> qs,
                                             std::optional<std::pair<double, double>> window = std::nullopt,
                                             RateModel model = RateModel::SlopeWithLogCorrection) {
  for (double q : qs) {
    if (!(q > 1.0 && q <= 2.0)) throw std::invalid_argument("spectral_profile: q must lie in (1,2]");
  }
  if (series.size() < 5) throw InsufficientData("spectral_profile needs n_max >= 4");
  SpectralProfile out;
  out.n_max = series.size() - 1;
  std::sort(qs.begin(), qs.end(), std::greater<>());  // descending q is ascending p
  std::vector<EntropyProfile> profiles;
  for (std::size_t n = 1; n < series.size(); ++n) profiles.push_back(entropy_profile(series[n], {}, qs));
  for (double q : qs) {
    SpectralRow row;
    row.q = q;
    row.p = conjugate_exponent(q);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t n = 1; n < series.size(); ++n) {
      const double lq = profiles[n - 1].log_qnorm.at(q);
      pts.emplace_back(static_cast<double>(n), lq);
      const double bound = (1.0 - q) / q * mu_entropy;
      if (lq / static_cast<double>(n) < bound - 1e-12) {
        out.per_n_bound_ok = false;
        out.per_n_violations.push_back("q=" + format_double(q) + " n=" + std::to_string(n));
      }
    }
    row.fit = rate_fit(pts, model, window);
    row.r_q_raw = std::exp(row.fit.rate);
    row.r_q = std::exp(std::min(row.fit.rate, 0.0));
    row.stderr_log = row.fit.stderr_rate;
    row.minus_p_log_rq = -row.p * std::log(row.r_q);
    row.h_alpha = q / (1.0 - q) * std::log(row.r_q);
    out.rows.push_back(row);
  }
  for (std::size_t k = 0; k + 1 < out.rows.size(); ++k) {
    const auto& a = out.rows[k];
    const auto& b = out.rows[k + 1];
    const double slack = a.p * a.stderr_log + b.p * b.stderr_log;
    if (b.minus_p_log_rq < a.minus_p_log_rq - slack) {
      out.monotone_ok = false;
      out.monotone_violations.push_back("p=" + format_double(a.p) + "->" + format_double(b.p));
    }
  }
  if (!out.rows.empty()) out.c_estimate = out.rows.back().minus_p_log_rq;
  return out;
}

template <GroupModel M, MassValue V>
SpectralProfile spectral_profile(const Measure<M, V>& mu, CosetSpace<M>& X, const std::vector<double>& qs,
                                 std::size_t n_max, std::optional<std::pair<double, double>> window = std::nullopt,
                                 const Budget& budget = {}) {
  return spectral_profile_from_series(walk_series(mu, X, n_max, budget), measure_entropy(mu), qs, window);
}

inline std::string spectral_profile_csv(const SpectralProfile& sp) {
  std::string out = "q,p,r_q,stderr,minus_p_log_rq\n";
  for (const auto& r : sp.rows) {
    out += format_double(r.q) + "," + format_double(r.p) + "," + format_double(r.r_q) + "," +
           format_double(r.stderr_log) + "," + format_double(r.minus_p_log_rq) + "\n";
  }
  return out;
}

}  // namespace cwl
