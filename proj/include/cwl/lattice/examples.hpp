#pragma once

#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cwl/coset/coset_space.hpp"
#include "cwl/coset/families.hpp"
#include "cwl/group/presets.hpp"
#include "cwl/growth/classify.hpp"
#include "cwl/lattice/hnf.hpp"

namespace cwl {

struct UnknownExample : Error {
  explicit UnknownExample(const std::string& id) : Error("unknown example id '" + id + "'") {}
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
  std::string status() const { return pass ? "pass" : "fail"; }
};

struct VerifyReport {
  std::string example_id;
  std::vector<CheckResult> checks;
  double elapsed_ms = 0;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

struct VerifyOptions {
  int transversal_max_n = 8;
  int transversal_samples = 200;
  std::size_t k_growth_radius = 10;
  int parabolic_m = 12;
  int aj_max_j = 40;
  std::size_t heisenberg_radius = 14;
  std::size_t malnormal_radius = 6;
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& named_examples() {
  static const std::vector<std::string> ids = {"sl3-ut3-transversal",    "sl3-ut3-K-growth",
                                               "parabolic-2m-expansion", "aj-dominance",
                                               "heisenberg-pullback",    "free-factor-malnormal"};
  return ids;
}

namespace examples {

template <typename T>
std::string join(const std::vector<T>& v, std::size_t limit = 16) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) os << (i ? "," : "") << v[i];
  if (v.size() > limit) os << ",...";
  return os.str();
}

inline std::vector<BigInt> times_x_minus_one(const std::vector<BigInt>& p) {
  std::vector<BigInt> out(p.size() + 1, BigInt(0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += p[k];
    out[k + 1] -= p[k];
  }
  return out;
}

inline IntMatrix a_power(long n) { return power(cat_matrix(), n); }

inline IntMatrix k0_element(const IntVector& v, long n) { return u_matrix(v[0], v[1]) * power(t_matrix(), n); }

inline VerifyReport transversal(const VerifyOptions& o) {
  VerifyReport r;
  std::mt19937_64 rng(splitmix64(o.seed));
  const int N = o.transversal_max_n;
  std::uniform_int_distribution<long> coord(-50, 50), expo(-N, N);
  std::size_t tested = 0, bad = 0;
  auto charpoly_ok = [&](const IntVector& v, long n) {
    ++tested;
    auto lhs = characteristic_polynomial(k0_element(v, n));
    auto rhs = times_x_minus_one(characteristic_polynomial(a_power(n)));
    if (lhs != rhs) ++bad;
  };
  for (long n = -N; n <= N; ++n) charpoly_ok({0, 0}, n);
  for (int s = 0; s < o.transversal_samples; ++s) charpoly_ok({coord(rng), coord(rng)}, expo(rng));
  r.checks.push_back({"charpoly_factorization", bad == 0,
                      std::to_string(tested) + " elements u(v)t^n with |n|<=" + std::to_string(N) + ", " +
                          std::to_string(bad) + " mismatches"});
  auto chi1 = characteristic_polynomial(t_matrix());
  const std::vector<BigInt> expect = {1, -4, 4, -1};  // (X-1)(X^2-3X+1)
  r.checks.push_back({"n1_charpoly", chi1 == expect, "chi_t = " + join(chi1)});
  std::size_t members = 0, wrong = 0;
  for (long n = -N; n <= N; ++n)
    for (long a = -6; a <= 6; ++a)
      for (long b = -6; b <= 6; ++b) {
        IntMatrix g = k0_element({a, b}, n);
        bool upper = true;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j <= i; ++j)
            if (g(i, j) != (i == j ? 1 : 0)) upper = false;
        if (upper) {
          ++members;
          if (a != 0 || b != 0 || n != 0) ++wrong;
        }
      }
  r.checks.push_back({"ut3_meets_K_trivially", members == 1 && wrong == 0,
                      "box |a|,|b|<=6, |n|<=" + std::to_string(N) + ": " + std::to_string(members) +
                          " members of UT3, " + std::to_string(wrong) + " nontrivial"});
  return r;
}

inline VerifyReport k_growth(const VerifyOptions& o) {
  VerifyReport r;
  auto K = k_group();
  auto ball = cached_ball(K, o.k_growth_radius);
  GrowthSeries s{{}, SeriesSource::GroupBall};
  for (std::size_t k = 0; k <= o.k_growth_radius; ++k) s.counts.push_back(ball.ball_size(k));
  auto fit = growth_fit(s);
  r.checks.push_back({"ball_counts", s.well_formed(), "|B_K(R)| = " + join(s.counts, 32)});
  r.checks.push_back({"classified_exponential", fit.label == GrowthLabel::Exponential,
                      fit.describe() + " on [" + std::to_string(fit.window_lo) + "," + std::to_string(fit.window_hi) +
                          "], R2 exp " + format_double(fit.r2_exp) + " poly " + format_double(fit.r2_poly)});
  std::size_t upper = 0;
  for (const auto& g : ball.elements) {
    bool u = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j)
        if (g(i, j) != (i == j ? 1 : 0)) u = false;
    if (u) ++upper;
  }
  r.checks.push_back({"ball_meets_UT3_only_at_identity", upper == 1,
                      std::to_string(upper) + " unitriangular elements in B_K(" + std::to_string(o.k_growth_radius) + ")"});
  return r;
}

inline VerifyReport parabolic(const VerifyOptions& o) {
  VerifyReport r;
  auto G = MatrixGroupZ::sl_elementary(3);
  const IntMatrix g = IntMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  const IntMatrix ginv = inverse_unimodular(g);
  auto in_H = [](const IntMatrix& m) { return m(0, 1) == 0 && m(0, 2) == 0; };

  std::size_t bad_rows = 0, bad_members = 0, tested = 0;
  for (long n = -6; n <= 6; ++n) {
    IntMatrix An = a_power(n);
    for (long a = -5; a <= 5; ++a)
      for (long b = -5; b <= 5; ++b) {
        IntMatrix k = g * k0_element({a, b}, n) * ginv;
        ++tested;
        if (k(0, 0) != 1 + a || k(0, 1) != An(0, 0) - 1 - a || k(0, 2) != An(0, 1)) ++bad_rows;
        if (in_H(k) != (n == 0 && a == 0)) ++bad_members;
      }
  }
  r.checks.push_back({"row1_formula", bad_rows == 0,
                      std::to_string(tested) + " elements, row_1 = (1+a, p_n-1-a, q_n) failed " + std::to_string(bad_rows)});
  r.checks.push_back({"L_is_cyclic", bad_members == 0,
                      "k in H iff n = 0 and a = 0 on the box; L = g<u(0,1)>g^-1; " + std::to_string(bad_members) +
                          " exceptions"});

  // det(u_m, v_eps) must be pairwise distinct, u_m = A^m e_2.
  bool det_ok = true;
  std::vector<std::string> per_m;
  for (int m = 1; m <= o.parabolic_m; ++m) {
    IntMatrix Am = a_power(m);
    const BigInt um0 = Am(0, 1), um1 = Am(1, 1);
    std::vector<IntVector> cols;  // A^i e_1
    for (int i = 0; i < m; ++i) cols.push_back(a_power(i).column(0));
    std::set<BigInt> dets;
    for (std::uint32_t eps = 0; eps < (1u << m); ++eps) {
      BigInt v0 = 0, v1 = 0;
      for (int i = 0; i < m; ++i)
        if (eps >> i & 1u) v0 += cols[static_cast<std::size_t>(i)][0], v1 += cols[static_cast<std::size_t>(i)][1];
      dets.insert(um0 * v1 - um1 * v0);
    }
    if (dets.size() != (std::size_t{1} << m)) det_ok = false;
    per_m.push_back(std::to_string(m) + ":" + std::to_string(dets.size()));
  }
  r.checks.push_back({"distinct_cosets_det", det_ok, "m:distinct = " + join(per_m, 64)});

  // Second route: coset keys in G/H, and the word certificate of length <= 2m.
  const int m = o.parabolic_m;
  auto H = subspace_stabilizer(G, {{0, 1, 0}, {0, 0, 1}});
  const IntMatrix s_u = g * u_matrix(1, 0) * ginv, s_t = g * t_matrix() * ginv;
  std::set<std::string> keys;
  std::size_t cert_bad = 0, max_len = 0;
  for (std::uint32_t eps = 0; eps < (1u << m); ++eps) {
    IntVector v = {0, 0};
    IntMatrix word = IntMatrix::identity(3);
    std::size_t len = 0;
    for (int i = 0; i < m; ++i) {
      if (eps >> i & 1u) {
        IntVector c = a_power(i).column(0);
        v[0] += c[0];
        v[1] += c[1];
        word = word * s_u;
        ++len;
      }
      word = word * s_t;
      ++len;
    }
    IntMatrix x = g * k0_element(v, m) * ginv;
    if (!(word == x)) ++cert_bad;
    max_len = std::max(max_len, len);
    keys.insert(H.key(x));
  }
  r.checks.push_back({"distinct_cosets_hnf", keys.size() == (std::size_t{1} << m),
                      std::to_string(keys.size()) + " distinct keys of x_eps H at m = " + std::to_string(m)});
  r.checks.push_back({"length_certificate", cert_bad == 0 && max_len <= static_cast<std::size_t>(2 * m),
                      "words in {gu(1,0)g^-1, gtg^-1} of length <= " + std::to_string(max_len) + " reproduce x_eps; " +
                          std::to_string(cert_bad) + " mismatches"});
  return r;
}

inline VerifyReport aj_dominance(const VerifyOptions& o) {
  VerifyReport r;
  const int J = o.aj_max_j;
  std::vector<BigInt> x, y;
  bool rec_ok = true;
  for (int j = 1; j <= J; ++j) {
    IntVector c = a_power(j).column(1);
    x.push_back(c[0]);
    y.push_back(c[1]);
  }
  if (x[0] != 1 || y[0] != 1) rec_ok = false;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    if (x[j + 1] != 2 * x[j] + y[j] || y[j + 1] != x[j] + y[j]) rec_ok = false;
  }
  r.checks.push_back({"y_recursion", rec_ok, "y = " + join(y, 8)});
  bool dom = true;
  BigInt partial = y[0];
  for (std::size_t j = 1; j < y.size(); ++j) {
    if (!(y[j] > partial)) dom = false;
    partial += y[j];
  }
  r.checks.push_back({"y_superincreasing", dom, "y_j > sum_{k<j} y_k for 2 <= j <= " + std::to_string(J)});

  const std::vector<IntVector> xis = {{1, 0}, {0, 1}, {1, 1}, {2, -1}, {3, 5}, {-4, 7}, {1, -3}, {5, 8}};
  bool general = true;
  std::vector<std::string> onsets;
  for (const auto& xi : xis) {
    IntMatrix basis = primitive_completion(xi);
    IntVector eta = basis.column(1);
    std::vector<BigInt> a;
    for (int j = 0; j <= J; ++j) {
      IntVector w = a_power(j) * xi;
      a.push_back(w[0] * eta[1] - w[1] * eta[0]);
    }
    // Smallest J0 with |a_j| > sum_{i<j} |a_i| for every j in [J0, J].
    int onset = J + 1;
    BigInt sum = 0;
    std::vector<bool> holds;
    for (int j = 0; j <= J; ++j) {
      BigInt aj = a[static_cast<std::size_t>(j)] < 0 ? BigInt(-a[static_cast<std::size_t>(j)]) : a[static_cast<std::size_t>(j)];
      holds.push_back(aj > sum);
      sum += aj;
    }
    for (int j = J; j >= 0 && holds[static_cast<std::size_t>(j)]; --j) onset = j;
    if (onset > J / 2) general = false;
    onsets.push_back("(" + xi[0].str() + "," + xi[1].str() + "):J=" + std::to_string(onset));
  }
  r.checks.push_back({"general_dominance", general, "onset per xi: " + join(onsets, 16)});
  return r;
}

inline VerifyReport heisenberg_pullback(const VerifyOptions& o) {
  VerifyReport r;
  FreeGroup F(2);
  auto Q = MatrixGroupZ::heisenberg();
  const IntMatrix xg = Q.generators()[0], yg = Q.generators()[2];
  auto pi = free_hom(Q, {xg, yg});
  CosetSpace<FreeGroup> X(F, pullback<FreeGroup, MatrixGroupZ>(pi, cyclic_powers(Q, xg)));
  CosetSpace<MatrixGroupZ> Y(Q, cyclic_powers(Q, xg));
  auto sx = schreier_ball(X, o.heisenberg_radius);
  auto sy = schreier_ball(Y, o.heisenberg_radius);
  r.checks.push_back({"schreier_counts_agree", sx.counts == sy.counts,
                      "F2/H: " + join(sx.counts, 32) + " | Q/K: " + join(sy.counts, 32)});
  auto fit = growth_fit(sx);
  r.checks.push_back({"classified_polynomial", fit.label == GrowthLabel::Polynomial, fit.describe()});
  return r;
}

inline VerifyReport free_factor(const VerifyOptions& o) {
  VerifyReport r;
  FreeGroup F(3);
  auto H = free_subgroup(F, {F.parse("a"), F.parse("b")});
  for (const char* k : {"c", "c^-1"}) {
    auto s = conj_intersection_growth(F, H, F.parse(k), o.malnormal_radius);
    const bool trivial = std::all_of(s.counts.begin(), s.counts.end(), [](auto c) { return c == 1; });
    r.checks.push_back({std::string("intersection_trivial_") + (k[1] ? "cinv" : "c"), trivial,
                        "|H cap x H x^-1 cap B(R)| = " + join(s.counts)});
  }
  return r;
}

}  // namespace examples

/// Runs the checks for a registered example with exact arithmetic.
inline VerifyReport verify_named_example(const std::string& id, const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport r;
  if (id == "sl3-ut3-transversal") r = examples::transversal(opt);
  else if (id == "sl3-ut3-K-growth") r = examples::k_growth(opt);
  else if (id == "parabolic-2m-expansion") r = examples::parabolic(opt);
  else if (id == "aj-dominance") r = examples::aj_dominance(opt);
  else if (id == "heisenberg-pullback") r = examples::heisenberg_pullback(opt);
  else if (id == "free-factor-malnormal") r = examples::free_factor(opt);
  else throw UnknownExample(id);
  r.example_id = id;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace cwl
