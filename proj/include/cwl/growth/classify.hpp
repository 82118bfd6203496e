#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cwl/coset/oracle.hpp"
#include "cwl/core/format.hpp"
#include "cwl/group/ball.hpp"
#include "cwl/growth/series.hpp"

namespace cwl {

enum class GrowthLabel { Polynomial, Exponential, Inconclusive };

inline std::string to_string(GrowthLabel l) {
  switch (l) {
    case GrowthLabel::Polynomial: return "Polynomial";
    case GrowthLabel::Exponential: return "Exponential";
    case GrowthLabel::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct GrowthClass {
  GrowthLabel label = GrowthLabel::Inconclusive;
  double degree = 0;   // polynomial fit slope of log c against log(R + shift)
  double shift = 0;
  double rate = 0;     // exponential fit slope of log c against R
  double r2_poly = 0;
  double r2_exp = 0;
  double se_poly = 0;  // residual standard errors
  double se_exp = 0;
  std::size_t window_lo = 0;
  std::size_t window_hi = 0;

  std::string describe() const {
    switch (label) {
      case GrowthLabel::Polynomial: return "Polynomial(d=" + format_double(degree) + ")";
      case GrowthLabel::Exponential: return "Exponential(rate=" + format_double(rate) + ")";
      case GrowthLabel::Inconclusive: return "Inconclusive";
    }
    return "?";
  }
};

namespace detail {

struct LineFit {
  double slope = 0, intercept = 0, r2 = 0, se = 0;
};

inline LineFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.slope * x[i] - f.intercept;
    ssr += r * r;
  }
  f.r2 = syy > 0 ? 1.0 - ssr / syy : 1.0;
  f.se = std::sqrt(ssr / (n - 2));
  return f;
}

}  // namespace detail

constexpr double kGrowthR2Threshold = 0.99;
constexpr double kGrowthSeparation = 2.0;

/// Polynomial vs exponential fit on the window [lo, hi]. Default window: the last
/// half of the radii, at least 5 of them, never including R = 0.
/// The polynomial model fits log c against log(R + shift), shift in {0, 0.05, ..., 1}.
inline GrowthClass growth_fit(const GrowthSeries& s, std::optional<std::pair<std::size_t, std::size_t>> window = {}) {
  std::size_t hi = window ? std::min(window->second, s.radius()) : s.radius();
  std::size_t lo = 1;
  if (window) {
    lo = window->first;
  } else {
    const std::size_t take = std::max<std::size_t>((s.counts.size() + 1) / 2, 5);
    if (hi + 1 > take) lo = std::max<std::size_t>(1, hi + 1 - take);
  }
  if (s.counts.empty() || hi < lo || hi - lo + 1 < 5) throw InsufficientData("growth fit needs a window of >= 5 radii");
  GrowthClass out;
  out.window_lo = lo;
  out.window_hi = hi;
  std::vector<double> r, y;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (s.counts[k] == 0) throw InsufficientData("growth fit needs positive counts");
    r.push_back(static_cast<double>(k));
    y.push_back(std::log(static_cast<double>(s.counts[k])));
  }
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
    out.label = GrowthLabel::Polynomial;
    out.r2_poly = out.r2_exp = 1.0;
    return out;
  }
  auto e = detail::line_fit(r, y);
  out.rate = e.slope;
  out.r2_exp = e.r2;
  out.se_exp = e.se;
  out.r2_poly = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 20; ++k) {
    const double shift = 0.05 * k;
    if (static_cast<double>(lo) + shift <= 0) continue;
    std::vector<double> lr;
    for (double v : r) lr.push_back(std::log(v + shift));
    auto p = detail::line_fit(lr, y);
    if (p.r2 > out.r2_poly) {
      out.r2_poly = p.r2;
      out.se_poly = p.se;
      out.degree = p.slope;
      out.shift = shift;
    }
  }
  const bool poly_wins = out.r2_poly >= out.r2_exp;
  const double best = std::max(out.r2_poly, out.r2_exp);
  const double se_win = poly_wins ? out.se_poly : out.se_exp;
  const double se_lose = poly_wins ? out.se_exp : out.se_poly;
  if (best < kGrowthR2Threshold || se_lose < kGrowthSeparation * se_win) {
    out.label = GrowthLabel::Inconclusive;
  } else {
    out.label = poly_wins ? GrowthLabel::Polynomial : GrowthLabel::Exponential;
  }
  return out;
}

/// |B_G(R)| for R = 0..radius.
template <GroupModel M>
GrowthSeries group_growth(const M& model, std::size_t radius, const Budget& budget = {}) {
  auto ball = ball_enumerate(model, radius, budget);
  GrowthSeries out;
  out.source = SeriesSource::GroupBall;
  for (std::size_t k = 0; k <= radius; ++k) out.counts.push_back(ball.ball_size(k));
  return out;
}

/// |H cap B_G(R)| for R = 0..radius.
template <GroupModel M>
GrowthSeries subgroup_growth(const M& model, const SubgroupOracle<M>& H, std::size_t radius, const Budget& budget = {}) {
  auto ball = ball_enumerate(model, radius, budget);
  GrowthSeries out;
  out.source = SeriesSource::SubgroupBall;
  out.counts.assign(radius + 1, 0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (H.contains(ball.elements[i])) ++out.counts[ball.lengths[i]];
  }
  for (std::size_t k = 1; k <= radius; ++k) out.counts[k] += out.counts[k - 1];
  return out;
}

/// |K_x cap B_G(R)| with K_x = H cap x H x^-1, i.e. g in H and x^-1 g x in H.
template <GroupModel M>
GrowthSeries conj_intersection_growth(const M& model, const SubgroupOracle<M>& H, const Element<M>& x,
                                      std::size_t radius, const Budget& budget = {}) {
  auto ball = ball_enumerate(model, radius, budget);
  const Element<M> xinv = model.inverse(x);
  GrowthSeries out;
  out.source = SeriesSource::IntersectionBall;
  out.counts.assign(radius + 1, 0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto& g = ball.elements[i];
    if (H.contains(g) && H.contains(model.multiply(model.multiply(xinv, g), x))) ++out.counts[ball.lengths[i]];
  }
  for (std::size_t k = 1; k <= radius; ++k) out.counts[k] += out.counts[k - 1];
  return out;
}

struct CoveringResult {
  bool ok = true;
  std::size_t reps = 0;             // |S_R|
  std::size_t subgroup_points = 0;  // |H cap B(R)|
  std::size_t max_k_length = 0;     // max l(s^-1 h) over the covering
  std::vector<std::string> failures;
};

/// Builds S_R (one representative per left K_x-coset meeting H cap B(R)) and checks
/// H cap B(R) is covered by s (K_x cap B(2R)) for s in S_R.
template <GroupModel M>
CoveringResult covering_check(const M& model, const SubgroupOracle<M>& H, const Element<M>& x, std::size_t radius,
                              const Budget& budget = {}) {
  auto ball = ball_enumerate(model, radius, budget);
  LengthOracle<M> lengths(model, budget);
  const Element<M> xinv = model.inverse(x);
  auto in_kx = [&](const Element<M>& k) {
    return H.contains(k) && H.contains(model.multiply(model.multiply(xinv, k), x));
  };
  CoveringResult out;
  std::vector<Element<M>> reps, rep_inv;
  std::vector<Element<M>> points;
  for (const auto& h : ball.elements) {
    if (!H.contains(h)) continue;
    points.push_back(h);
    bool covered = false;
    for (const auto& si : rep_inv) {
      if (in_kx(model.multiply(si, h))) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      reps.push_back(h);
      rep_inv.push_back(model.inverse(h));
    }
  }
  out.reps = reps.size();
  out.subgroup_points = points.size();
  for (const auto& h : points) {
    bool found = false;
    for (const auto& si : rep_inv) {
      Element<M> k = model.multiply(si, h);
      if (!in_kx(k)) continue;
      auto l = lengths.length(k, 2 * radius);
      if (!l) continue;
      out.max_k_length = std::max(out.max_k_length, *l);
      found = true;
      break;
    }
    if (!found) {
      out.ok = false;
      out.failures.push_back(model.format(h));
    }
  }
  return out;
}

struct SNormalSample {
  std::string x;
  std::size_t x_radius = 0;
  GrowthSeries intersection;
  GrowthClass fit;  // Inconclusive when the window is too short
};

/// Intersection growth of H cap x H x^-1 for x drawn from spheres of increasing radius.
/// Reports only; it never asserts s-normality.
template <GroupModel M>
std::vector<SNormalSample> snormal_probe(const M& model, const SubgroupOracle<M>& H, std::size_t radius,
                                         const std::vector<std::size_t>& sphere_radii, std::size_t per_sphere,
                                         std::uint64_t seed, const Budget& budget = {}) {
  std::size_t top = 0;
  for (auto r : sphere_radii) top = std::max(top, r);
  auto ball = ball_enumerate(model, top, budget);
  std::vector<SNormalSample> out;
  std::mt19937_64 rng(splitmix64(seed));
  for (auto r : sphere_radii) {
    const std::size_t lo = r ? ball.ball_size(r - 1) : 0;
    const std::size_t hi = ball.ball_size(r);
    for (std::size_t k = 0; k < per_sphere && hi > lo; ++k) {
      const auto& x = ball.elements[lo + rng() % (hi - lo)];
      SNormalSample s;
      s.x = model.format(x);
      s.x_radius = r;
      s.intersection = conj_intersection_growth(model, H, x, radius, budget);
      if (radius >= 5) {
        try {
          s.fit = growth_fit(s.intersection);
        } catch (const InsufficientData&) {
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

enum class SlcVerdict { ConsistentViaSubexpSchreier, RefutedNonSNormalSuperpoly, RefutedCoAmenableExpSchreier, Undetermined };

inline std::string to_string(SlcVerdict v) {
  switch (v) {
    case SlcVerdict::ConsistentViaSubexpSchreier: return "ConsistentViaSubexpSchreier";
    case SlcVerdict::RefutedNonSNormalSuperpoly: return "RefutedNonSNormalSuperpoly";
    case SlcVerdict::RefutedCoAmenableExpSchreier: return "RefutedCoAmenableExpSchreier";
    case SlcVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace rules {
inline constexpr const char* kSubexpSchreier = "slc.subexp_schreier_sufficient";
inline constexpr const char* kNonSNormal = "slc.non_s_normal_requires_poly_subgroup";
inline constexpr const char* kCoAmenable = "slc.coamenable_requires_subexp_schreier";
inline constexpr const char* kNone = "slc.no_rule_fired";
}  // namespace rules

/// Intersection growth counted as bounded (K_x finite) when the fitted degree is below this.
constexpr double kBoundedDegree = 0.25;

struct VerdictInputs {
  std::optional<GrowthClass> schreier;
  std::optional<GrowthClass> subgroup;
  std::vector<std::pair<std::string, GrowthClass>> intersections;
  bool co_amenable = false;
  std::string co_amenable_provenance;  // who asserted the flag
};

struct VerdictResult {
  SlcVerdict verdict = SlcVerdict::Undetermined;
  std::string rule = rules::kNone;
  std::vector<std::string> fired;
  std::string inputs_digest;
};

inline std::string verdict_inputs_digest(const VerdictInputs& in) {
  auto cls = [](const GrowthClass& g) {
    return to_string(g.label) + ":" + format_double(g.degree) + ":" + format_double(g.rate) + ":" +
           std::to_string(g.window_lo) + "-" + std::to_string(g.window_hi);
  };
  std::string s = "schreier=" + (in.schreier ? cls(*in.schreier) : "-") + ";subgroup=" +
                  (in.subgroup ? cls(*in.subgroup) : "-") + ";coamenable=" + (in.co_amenable ? "1" : "0");
  for (const auto& [x, g] : in.intersections) s += ";x=" + x + ":" + cls(g);
  return hex64(fnv1a(s));
}

inline VerdictResult slc_verdict(const VerdictInputs& in) {
  if (!in.schreier && !in.subgroup && in.intersections.empty()) throw InsufficientData("slc_verdict needs some input");
  VerdictResult out;
  out.inputs_digest = verdict_inputs_digest(in);
  const bool consistent = in.schreier && in.schreier->label == GrowthLabel::Polynomial;
  bool bounded = false;
  for (const auto& [x, g] : in.intersections) {
    if (g.label == GrowthLabel::Polynomial && g.degree < kBoundedDegree) bounded = true;
  }
  const bool non_s_normal = bounded && in.subgroup && in.subgroup->label == GrowthLabel::Exponential;
  const bool co_amenable = in.co_amenable && in.schreier && in.schreier->label == GrowthLabel::Exponential;
  if (consistent) out.fired.push_back(rules::kSubexpSchreier);
  if (non_s_normal) out.fired.push_back(rules::kNonSNormal);
  if (co_amenable) out.fired.push_back(rules::kCoAmenable);
  if (consistent && (non_s_normal || co_amenable)) {
    std::string all;
    for (const auto& r : out.fired) all += (all.empty() ? "" : ", ") + r;
    throw ConflictingEvidence("rules fired in both directions: " + all);
  }
  if (consistent) {
    out.verdict = SlcVerdict::ConsistentViaSubexpSchreier;
    out.rule = rules::kSubexpSchreier;
  } else if (non_s_normal) {
    out.verdict = SlcVerdict::RefutedNonSNormalSuperpoly;
    out.rule = rules::kNonSNormal;
  } else if (co_amenable) {
    out.verdict = SlcVerdict::RefutedCoAmenableExpSchreier;
    out.rule = rules::kCoAmenable;
  }
  return out;
}

}  // namespace cwl
