#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwl/core/error.hpp"

namespace cwl {

enum class RateModel { LinearSlope, SlopeWithLogCorrection };

inline std::string to_string(RateModel m) {
  return m == RateModel::LinearSlope ? "linear_slope" : "slope_with_log_correction";
}

struct RateFit {
  double rate = 0;
  double stderr_rate = 0;
  double log_coefficient = 0;  // b in c n + b log n + a (0 for the linear model)
  double intercept = 0;
  double cesaro = 0;  // mean successive difference over the window
  double window_lo = 0;
  double window_hi = 0;
  std::size_t points = 0;
  RateModel model = RateModel::LinearSlope;
};

/// Least-squares rate over a window of (n, value) pairs. Default window: the
/// last half of the series, at least 5 points when available.
inline RateFit rate_fit(const std::vector<std::pair<double, double>>& series, RateModel model,
                        std::optional<std::pair<double, double>> window = std::nullopt) {
  std::vector<std::pair<double, double>> pts;
  if (window) {
    for (const auto& p : series)
      if (p.first >= window->first && p.first <= window->second) pts.push_back(p);
  } else {
    std::size_t take = std::max<std::size_t>((series.size() + 1) / 2, std::min<std::size_t>(5, series.size()));
    pts.assign(series.end() - static_cast<long>(take), series.end());
  }
  const std::size_t k = model == RateModel::LinearSlope ? 2 : 3;
  if (pts.size() < 4 || pts.size() <= k) throw InsufficientData("rate fit needs at least 4 points beyond the model size");
  const auto m = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(m, static_cast<Eigen::Index>(k));
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double n = pts[static_cast<std::size_t>(i)].first;
    A(i, 0) = n;
    if (k == 3) {
      if (n <= 0) throw InsufficientData("log correction needs n > 0");
      A(i, 1) = std::log(n);
    }
    A(i, static_cast<Eigen::Index>(k) - 1) = 1.0;
    y(i) = pts[static_cast<std::size_t>(i)].second;
  }
  Eigen::VectorXd beta = A.colPivHouseholderQr().solve(y);
  Eigen::VectorXd resid = y - A * beta;
  double sigma2 = resid.squaredNorm() / static_cast<double>(m - static_cast<Eigen::Index>(k));
  Eigen::MatrixXd cov = sigma2 * (A.transpose() * A).inverse();
  RateFit out;
  out.model = model;
  out.rate = beta(0);
  out.stderr_rate = std::sqrt(std::max(0.0, cov(0, 0)));
  out.log_coefficient = k == 3 ? beta(1) : 0.0;
  out.intercept = beta(static_cast<Eigen::Index>(k) - 1);
  out.window_lo = pts.front().first;
  out.window_hi = pts.back().first;
  out.points = pts.size();
  double acc = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    acc += (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
  out.cesaro = acc / static_cast<double>(pts.size() - 1);
  return out;
}

}  // namespace cwl
