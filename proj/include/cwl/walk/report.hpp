#pragma once

#include <string>
#include <vector>

#include "cwl/core/format.hpp"
#include "cwl/walk/entropy.hpp"

namespace cwl {

/// One row per step n >= 1: n,support_size,H,H_alpha_{a...},qnorm_{q...}.
template <MassValue V>
std::string walk_csv(const std::vector<CosetDistribution<V>>& series, const std::vector<double>& alphas,
                     const std::vector<double>& qs) {
  std::string out = "n,support_size,H";
  for (double a : alphas) out += ",H_alpha_" + format_double(a);
  for (double q : qs) out += ",qnorm_" + format_double(q);
  out += "\n";
  for (std::size_t n = 1; n < series.size(); ++n) {
    auto prof = entropy_profile(series[n], alphas, qs);
    out += std::to_string(n) + "," + std::to_string(series[n].support_size()) + "," + format_double(prof.shannon);
    for (double a : alphas) out += "," + format_double(prof.renyi.at(a));
    for (double q : qs) out += "," + format_double(prof.qnorm.at(q));
    out += "\n";
  }
  return out;
}

}  // namespace cwl
