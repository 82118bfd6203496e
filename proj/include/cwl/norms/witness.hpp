#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cwl/group/model.hpp"
#include "cwl/norms/lorentz.hpp"

namespace cwl {

struct InvalidWitness : Error {
  using Error::Error;
};

enum class WitnessKind { Polynomial, PolynomialBall, WeightTable };

inline std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Polynomial: return "polynomial";
    case WitnessKind::PolynomialBall: return "polynomial_ball";
    case WitnessKind::WeightTable: return "weight_table";
  }
  return "?";
}

/// Candidate constants for a pair-RD or weighted (SLC) inequality.
///   Polynomial(C_h, s1):   ||f||_h <= C_h ||f (1+l)^s1||_(2,1)
///   PolynomialBall(C, D):  ||lambda(f)|| <= C (R+1)^D ||f||_(2,1) for supp f in B(R)
///   WeightTable(C_h, w, W): ||f||_h <= C_h ||f w||_(2,1) with w <= W(l)
template <GroupModel M>
struct RDWitness {
  WitnessKind kind = WitnessKind::Polynomial;
  double constant = 1;
  double exponent = 0;
  std::function<double(const Element<M>&)> weight;
  std::vector<double> majorant;  // W(0), W(1), ...

  static RDWitness polynomial(double c_h, double s1) { return {WitnessKind::Polynomial, c_h, s1, {}, {}}; }
  static RDWitness polynomial_ball(double c, double d) { return {WitnessKind::PolynomialBall, c, d, {}, {}}; }
  static RDWitness weight_table(double c_h, std::function<double(const Element<M>&)> w, std::vector<double> W) {
    RDWitness out{WitnessKind::WeightTable, c_h, 0, std::move(w), std::move(W)};
    out.validate();
    return out;
  }

  void validate() const {
    if (!(constant > 0)) throw InvalidWitness("witness constant must be positive");
    if (kind != WitnessKind::WeightTable) {
      if (exponent < 0) throw InvalidWitness("witness exponent must be nonnegative");
      return;
    }
    if (!weight || majorant.empty()) throw InvalidWitness("weight table needs w and W");
    if (majorant.front() < 1) throw InvalidWitness("radial majorant must be >= 1");
    for (std::size_t t = 1; t < majorant.size(); ++t) {
      if (majorant[t] < majorant[t - 1]) throw InvalidWitness("radial majorant must be non-decreasing");
    }
  }
};

/// Interpolation parameter for q: 1/q = 1 - theta/2.
inline double witness_theta(double q) { return 2.0 * (1.0 - 1.0 / q); }

/// Right-hand side of the witness inequality on l^q(X) for f.
template <GroupModel M, MassValue V>
double witness_rhs(const RDWitness<M>& w, const FinFunc<M, V>& f, CosetSpace<M>& X, double q) {
  const double theta = witness_theta(q);
  const double scale = std::pow(w.constant, theta);
  if (w.kind == WitnessKind::PolynomialBall) {
    return scale * std::pow(1.0 + static_cast<double>(f.radius()), w.exponent * theta) * lorentz_norm(f, X, q);
  }
  FinFunc<M, double> weighted;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double factor;
    if (w.kind == WitnessKind::Polynomial) {
      factor = std::pow(1.0 + f.length(i), w.exponent * theta);
    } else {
      const double wg = w.weight(f.element(i));
      const std::size_t t = std::min<std::size_t>(f.length(i), w.majorant.size() - 1);
      if (wg < 1 || (f.length(i) < w.majorant.size() && wg > w.majorant[t] * (1 + 1e-12))) {
        throw InvalidWitness("weight outside [1, W(l)] at a support point");
      }
      factor = std::pow(wg, theta);
    }
    weighted.add(f.element(i), std::abs(to_double(f.value(i))) * factor, f.length(i));
  }
  return scale * lorentz_norm(weighted, X, q);
}

template <GroupModel M>
struct WitnessSample {
  FinFunc<M, double> f;
  std::optional<FinFunc<M, double>> phi;
  std::size_t radius = 0;
  std::string label;
};

struct WitnessRow {
  std::size_t radius = 0;
  std::string label;
  std::string bound;  // "opnorm" or "herz": which lower bound fed lhs_lower
  double q = 2;
  double lhs_lower = 0;
  double rhs = 0;
  bool violated = false;
};

struct WitnessReport {
  std::vector<WitnessRow> rows;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation_radius;
  // "refuted" when some row violates the inequality; "consistent" never means proved.
  std::string status() const { return violations ? "refuted" : "consistent"; }
};

struct WitnessOptions {
  bool opnorm = true;
  std::size_t opnorm_radius = 1;
  std::size_t opnorm_trials = 4;
  std::uint64_t seed = 1;
  HerzRoute herz_route = HerzRoute::Pushforward;
  double relative_slack = 1e-12;  // rounding guard on the comparison
};

/// Falsification test: compares certified lower bounds for the left side with the witness bound.
template <GroupModel M>
WitnessReport rd_witness_test(CosetSpace<M>& X, const RDWitness<M>& w, const std::vector<WitnessSample<M>>& samples,
                              const std::vector<double>& qs, const WitnessOptions& opt = {}) {
  w.validate();
  WitnessReport rep;
  auto push = [&](WitnessRow row) {
    row.violated = row.lhs_lower > row.rhs * (1 + opt.relative_slack);
    if (row.violated) {
      ++rep.violations;
      if (!rep.first_violation_radius || row.radius < *rep.first_violation_radius) rep.first_violation_radius = row.radius;
    }
    rep.rows.push_back(std::move(row));
  };
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    if (s.phi) {
      auto hb = herz_lower(s.f, *s.phi, X, opt.herz_route);
      push({s.radius, s.label, "herz", 2.0, hb.value, witness_rhs(w, s.f, X, 2.0), false});
    }
    if (!opt.opnorm) continue;
    for (double q : qs) {
      auto ob = opnorm_lower(s.f, X, q, opt.opnorm_radius, opt.opnorm_trials, opt.seed + 7919 * k);
      push({s.radius, s.label, "opnorm", q, ob.value, witness_rhs(w, s.f, X, q), false});
    }
  }
  return rep;
}

/// f = 1_{S k}, phi = 1_{k^-1 S^-1} for a finite set S (typically H intersected with a ball).
template <GroupModel M>
WitnessSample<M> translate_pair(const M& model, const std::vector<Element<M>>& S, const Element<M>& k,
                                LengthOracle<M>& lengths, std::size_t cap, std::size_t radius) {
  WitnessSample<M> s;
  s.radius = radius;
  std::vector<Element<M>> fs, ps;
  const Element<M> kinv = model.inverse(k);
  for (const auto& h : S) {
    fs.push_back(model.multiply(h, k));
    ps.push_back(model.multiply(kinv, model.inverse(h)));
  }
  s.f = indicator<M, double>(fs, lengths, cap);
  s.phi = indicator<M, double>(ps, lengths, cap);
  return s;
}

/// Random nonnegative f and phi on B(radius) with the given support size.
template <GroupModel M>
std::vector<WitnessSample<M>> random_samples(const M& model, std::size_t radius, std::size_t count,
                                             std::size_t support, std::uint64_t seed, LengthOracle<M>& lengths) {
  std::vector<WitnessSample<M>> out;
  for (std::size_t c = 0; c < count; ++c) {
    std::mt19937_64 rng(splitmix64(seed + c));
    std::uniform_real_distribution<double> val(0.0, 1.0);
    auto draw = [&] {
      FinFunc<M, double> f;
      for (std::size_t i = 0; i < support; ++i) {
        Element<M> g = random_word_element(model, rng() % (radius + 1), rng);
        auto l = lengths.length(g, radius);
        f.add(g, 1.0 - val(rng), static_cast<std::uint32_t>(*l));
      }
      return f;
    };
    WitnessSample<M> s;
    s.f = draw();
    s.phi = draw();
    s.radius = s.f.radius();
    s.label = "random#" + std::to_string(c);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace cwl
