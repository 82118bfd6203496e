#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cwl/cli/config.hpp"
#include "cwl/coset/families.hpp"
#include "cwl/group/presets.hpp"
#include "cwl/growth/classify.hpp"
#include "cwl/lattice/examples.hpp"
#include "cwl/norms/spectral.hpp"
#include "cwl/norms/witness.hpp"
#include "cwl/stallings/stallings.hpp"
#include "cwl/walk/distribution.hpp"
#include "cwl/walk/rate_fit.hpp"
#include "cwl/walk/report.hpp"

namespace cwl::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitCheckFailed = 2, kExitBudget = 3 };

struct RunOptions {
  std::string command;
  std::vector<std::string> args;  // positional arguments after the command
  bool timing = false;            // emit wall-clock times (breaks byte-identical reruns)
  std::filesystem::path out_dir = "cwl-out";
};

struct RunResult {
  int exit_code = kExitOk;
  std::map<std::string, std::string> files;  // file name -> contents
  std::string stdout_text;
};

using AnyModel = std::variant<FreeGroup, FreeAbelian, MatrixGroupZ>;

// ---------------------------------------------------------------- element syntax

inline IntMatrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw ParseError("matrix '" + text + "' is not a JSON row list");
  }
  if (!j.is_array() || j.empty()) throw ParseError("matrix '" + text + "' must be a nonempty row list");
  std::vector<std::vector<BigInt>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw ParseError("matrix '" + text + "' must be square");
    std::vector<BigInt> r;
    for (const auto& x : row) {
      if (x.is_number_integer()) {
        r.emplace_back(x.get<long long>());
      } else if (x.is_string()) {
        r.emplace_back(x.get<std::string>());
      } else {
        throw ParseError("matrix entry in '" + text + "' must be an integer");
      }
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

inline Word parse_element(const FreeGroup& F, const std::string& s) { return F.parse(s); }

inline IntVec parse_element(const FreeAbelian& Z, const std::string& s) {
  std::string body;
  for (char c : s)
    if (c != '(' && c != ')' && c != '[' && c != ']' && c != ' ') body += c;
  IntVec out;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError("bad integer '" + tok + "' in '" + s + "'");
    out.v.push_back(v);
  }
  Z.check(out);
  return out;
}

inline IntMatrix parse_element(const MatrixGroupZ& G, const std::string& s) {
  IntMatrix m = parse_matrix(s);
  G.check(m);
  return m;
}

// ---------------------------------------------------------------- model and oracle construction

inline AnyModel build_group(const GroupSpec& g) {
  if (g.kind == "free") return FreeGroup(g.rank);
  if (g.kind == "abelian") {
    if (g.dim < 1) throw ConfigError("field 'group.dim': must be >= 1");
    return FreeAbelian(g.dim);
  }
  if (!g.preset.empty()) {
    if (g.preset == "heisenberg") return MatrixGroupZ::heisenberg();
    if (g.preset == "K") return k_group();
    if (g.preset.size() > 2 && g.preset.rfind("sl", 0) == 0) {
      int n = std::atoi(g.preset.c_str() + 2);
      if (n >= 2 && n <= 8) return MatrixGroupZ::sl_elementary(n);
    }
    throw ConfigError("field 'group.preset': unknown preset '" + g.preset + "' (sl<n>, heisenberg, K)");
  }
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    try {
      gens.push_back(parse_matrix(g.generators[i]));
    } catch (const Error& e) {
      throw ConfigError("field 'group.generators[" + std::to_string(i) + "]': " + e.what());
    }
    if (gens.back().n != g.n) throw ConfigError("field 'group.generators[" + std::to_string(i) + "]': size != n");
  }
  return MatrixGroupZ::symmetric(g.n, gens);
}

template <GroupModel M>
std::vector<Element<M>> parse_list(const M& model, const std::vector<std::string>& items, const std::string& field) {
  std::vector<Element<M>> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      out.push_back(parse_element(model, items[i]));
    } catch (const Error& e) {
      throw ConfigError("field '" + field + "[" + std::to_string(i) + "]': " + e.what());
    }
  }
  return out;
}

template <GroupModel M>
SubgroupOracle<M> build_oracle(const M& model, const SubgroupSpec& s) {
  if (s.kind == "trivial") return trivial_subgroup(model);
  if (s.kind == "whole") return whole_group(model);
  if constexpr (std::is_same_v<M, FreeGroup>) {
    if (s.kind == "generated") return free_subgroup(model, parse_list(model, s.generators, "subgroup.generators"));
  } else if constexpr (std::is_same_v<M, FreeAbelian>) {
    if (s.kind == "generated") return sublattice(model, parse_list(model, s.generators, "subgroup.generators"));
  } else {
    auto vec = [](const std::vector<long>& v) {
      IntVector out;
      for (long x : v) out.emplace_back(x);
      return out;
    };
    if (s.kind == "unitriangular") return unitriangular(model);
    if (s.kind == "line_stabilizer") return line_stabilizer(model, vec(s.vector));
    if (s.kind == "subspace_stabilizer") {
      std::vector<IntVector> basis;
      for (const auto& b : s.basis) basis.push_back(vec(b));
      return subspace_stabilizer(model, basis);
    }
    if (s.kind == "congruence") return congruence(model, BigInt(s.level));
    if (s.kind == "cyclic") {
      try {
        return cyclic_powers(model, parse_element(model, s.matrix));
      } catch (const ParseError& e) {
        throw ConfigError(std::string("field 'subgroup.matrix': ") + e.what());
      }
    }
  }
  throw ConfigError("field 'subgroup.kind': '" + s.kind + "' is not available for " + model.describe());
}

template <MassValue V, GroupModel M>
Measure<M, V> build_measure(const M& model, const MeasureSpec& m) {
  if (m.srw) return simple_random_walk<V>(model);
  std::vector<std::pair<Element<M>, Rational>> items;
  for (const auto& [k, w] : m.weights) {
    try {
      items.emplace_back(parse_element(model, k), parse_rational(w));
    } catch (const Error& e) {
      throw ConfigError("field 'measure." + k + "': " + e.what());
    }
  }
  try {
    return measure_from_weights<V>(model, items);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("field 'measure': ") + e.what());
  }
}

// ---------------------------------------------------------------- report helpers

inline Json report_header(const ExperimentConfig& c, const std::string& command, std::vector<std::string> rules) {
  std::sort(rules.begin(), rules.end());
  return Json{{"command", command},
              {"config_digest", config_digest(c)},
              {"value_mode", c.exact ? "exact" : "float"},
              {"seed", c.seed},
              {"threads", c.threads},
              {"rules", rules}};
}

inline Json fit_json(const RateFit& f) {
  return Json{{"rate", f.rate},
              {"stderr", f.stderr_rate},
              {"log_coefficient", f.log_coefficient},
              {"intercept", f.intercept},
              {"cesaro", f.cesaro},
              {"window", Json::array({f.window_lo, f.window_hi})},
              {"points", f.points},
              {"model", to_string(f.model)}};
}

inline Json growth_json(const GrowthClass& g) {
  return Json{{"label", to_string(g.label)}, {"describe", g.describe()}, {"degree", g.degree},
              {"shift", g.shift},            {"rate", g.rate},           {"r2_poly", g.r2_poly},
              {"r2_exp", g.r2_exp},          {"se_poly", g.se_poly},     {"se_exp", g.se_exp},
              {"window", Json::array({g.window_lo, g.window_hi})}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- commands

template <MassValue V, GroupModel M>
RunResult cmd_walk(const ExperimentConfig& c, const M& model) {
  Budget budget{c.budget_elems};
  CosetSpace<M> X(model, build_oracle(model, c.subgroup));
  auto mu = build_measure<V>(model, c.measure);
  auto series = walk_series(mu, X, c.walk.n_max, budget);
  RunResult out;
  out.files["walk.csv"] = walk_csv(series, c.walk.alphas, c.walk.q_list);

  bool conserved = true;
  for (const auto& nu : series) {
    if constexpr (is_exact_v<V>) {
      conserved = conserved && nu.total() == 1;
    } else {
      conserved = conserved && std::abs(nu.total() - 1.0) <= 1e-9;
    }
  }
  std::vector<std::pair<double, double>> shannon;
  std::map<double, std::vector<std::pair<double, double>>> renyi;
  for (std::size_t n = 1; n < series.size(); ++n) {
    auto prof = entropy_profile(series[n], c.walk.alphas);
    shannon.emplace_back(static_cast<double>(n), prof.shannon);
    for (double a : c.walk.alphas) renyi[a].emplace_back(static_cast<double>(n), prof.renyi.at(a));
  }
  Json fits = Json::object();
  auto try_fit = [&](const std::vector<std::pair<double, double>>& pts, RateModel m) -> Json {
    try {
      return fit_json(rate_fit(pts, m, c.walk.window));
    } catch (const InsufficientData& e) {
      return Json{{"error", e.what()}};
    }
  };
  fits["shannon_linear"] = try_fit(shannon, RateModel::LinearSlope);
  fits["shannon_log_corrected"] = try_fit(shannon, RateModel::SlopeWithLogCorrection);
  Json rj = Json::object();
  for (const auto& [a, pts] : renyi) rj[format_double(a)] = try_fit(pts, RateModel::LinearSlope);
  fits["renyi_linear"] = rj;

  Json j = report_header(c, "walk", {"walk.exact_convolution", "entropy.natural_log", "fit.least_squares"});
  j["n_max"] = c.walk.n_max;
  j["mass_conserved"] = conserved;
  j["measure_entropy"] = measure_entropy(mu);
  j["cosets_seen"] = X.size();
  j["fits"] = fits;
  if (!shannon.empty()) j["h_over_n_final"] = shannon.back().second / shannon.back().first;
  out.files["walk.json"] = dump(j);
  out.stdout_text = "walk: " + std::to_string(c.walk.n_max) + " steps, mass " +
                    (conserved ? "conserved" : "NOT conserved") + "\n";
  out.exit_code = conserved ? kExitOk : kExitCheckFailed;
  return out;
}

template <MassValue V, GroupModel M>
RunResult cmd_spectral(const ExperimentConfig& c, const M& model) {
  Budget budget{c.budget_elems};
  CosetSpace<M> X(model, build_oracle(model, c.subgroup));
  auto mu = build_measure<V>(model, c.measure);
  SpectralProfile sp;
  try {
    sp = spectral_profile_from_series(walk_series(mu, X, c.spectral.n_max, budget), measure_entropy(mu),
                                      c.spectral.q_list, c.spectral.window);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'spectral.q_list': ") + e.what());
  } catch (const InsufficientData& e) {
    throw ConfigError(std::string("field 'spectral': ") + e.what());
  }
  RunResult out;
  out.files["spectral.csv"] = spectral_profile_csv(sp);
  Json rows = Json::array();
  for (const auto& r : sp.rows) {
    rows.push_back({{"q", r.q},
                    {"p", r.p},
                    {"r_q", r.r_q},
                    {"r_q_raw", r.r_q_raw},
                    {"stderr_log_rq", r.stderr_log},
                    {"minus_p_log_rq", r.minus_p_log_rq},
                    {"h_alpha", r.h_alpha},
                    {"fit", fit_json(r.fit)}});
  }
  Json j = report_header(c, "spectral", {"spectral.log_qnorm_fit", "spectral.monotone_in_p", "spectral.per_n_lower_bound"});
  j["rows"] = rows;
  j["n_max"] = sp.n_max;
  j["c_estimate"] = sp.c_estimate;
  j["monotone_ok"] = sp.monotone_ok;
  j["monotone_violations"] = sp.monotone_violations;
  j["per_n_bound_ok"] = sp.per_n_bound_ok;
  j["per_n_violations"] = sp.per_n_violations;
  out.files["spectral.json"] = dump(j);
  const bool ok = sp.monotone_ok && sp.per_n_bound_ok;
  out.stdout_text = "spectral: c_estimate " + format_double(sp.c_estimate) + (ok ? "" : ", CHECK FAILED") + "\n";
  out.exit_code = ok ? kExitOk : kExitCheckFailed;
  return out;
}

template <GroupModel M>
RunResult cmd_growth(const ExperimentConfig& c, const M& model) {
  Budget budget{c.budget_elems};
  const auto& g = c.growth;
  auto H = build_oracle(model, c.subgroup);
  CosetSpace<M> X(model, H);
  RunResult out;

  std::vector<std::pair<std::string, GrowthSeries>> series;
  series.emplace_back("group", group_growth(model, g.radius, budget));
  series.emplace_back("schreier", schreier_ball(X, g.radius, budget));
  series.emplace_back("subgroup", subgroup_growth(model, H, g.radius, budget));
  auto conj = parse_list(model, g.conjugators, "growth.conjugators");
  for (std::size_t i = 0; i < conj.size(); ++i)
    series.emplace_back("intersection#" + std::to_string(i), conj_intersection_growth(model, H, conj[i], g.radius, budget));

  std::string csv = "radius,count,source\n";
  Json classes = Json::object();
  VerdictInputs in;
  in.co_amenable = g.co_amenable;
  in.co_amenable_provenance = g.co_amenable_provenance;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& [name, s] = series[i];
    for (std::size_t r = 0; r < s.counts.size(); ++r)
      csv += std::to_string(r) + "," + std::to_string(s.counts[r]) + "," + name + "\n";
    try {
      GrowthClass gc = growth_fit(s, g.window);
      classes[name] = growth_json(gc);
      if (name == "schreier") in.schreier = gc;
      if (name == "subgroup") in.subgroup = gc;
      if (i >= 3) in.intersections.emplace_back(g.conjugators[i - 3], gc);
    } catch (const InsufficientData& e) {
      classes[name] = Json{{"error", e.what()}};
    }
  }
  out.files["growth.csv"] = csv;
  if (g.export_edges) {
    out.files["schreier_edges.csv"] = schreier_edges_csv(X, g.radius, budget);
    out.files["schreier_growth.csv"] = schreier_growth_csv(series[1].second);
  }

  Json j = report_header(c, "growth", {rules::kSubexpSchreier, rules::kNonSNormal, rules::kCoAmenable, rules::kNone});
  j["radius"] = g.radius;
  j["subgroup"] = H.name;
  j["conjugators"] = g.conjugators;
  j["classes"] = classes;
  try {
    auto v = slc_verdict(in);
    j["verdict"] = {{"verdict", to_string(v.verdict)},
                    {"rule", v.rule},
                    {"fired", v.fired},
                    {"inputs_digest", v.inputs_digest}};
    out.stdout_text = "growth: " + to_string(v.verdict) + " (" + v.rule + ")\n";
  } catch (const ConflictingEvidence& e) {
    j["verdict"] = {{"error", e.what()}};
    out.exit_code = kExitCheckFailed;
    out.stdout_text = std::string("growth: ") + e.what() + "\n";
  }
  out.files["growth.json"] = dump(j);
  return out;
}

inline RunResult cmd_classify_free(const ExperimentConfig& c, const FreeGroup& F, const std::vector<std::string>& args) {
  std::vector<std::string> words = args.empty() ? c.subgroup.generators : args;
  auto gens = parse_list(F, words, args.empty() ? "subgroup.generators" : "args");
  auto cls = classify_pair_free(F.rank(), gens);
  Json j = report_header(c, "classify-free", {cls.rule});
  j["generators"] = words;
  j["verdict"] = to_string(cls.verdict);
  j["rule"] = cls.rule;
  j["rank"] = cls.rank_index.rank;
  j["index"] = cls.rank_index.index ? Json(*cls.rank_index.index) : Json(nullptr);
  RunResult out;
  out.files["classify.json"] = dump(j);
  out.stdout_text = to_string(cls.verdict) + "\n";
  return out;
}

template <GroupModel M>
RunResult cmd_norms(const ExperimentConfig& c, const M& model) {
  const auto& n = c.norms;
  Budget budget{c.budget_elems};
  auto H = build_oracle(model, c.subgroup);
  CosetSpace<M> X(model, H);
  LengthOracle<M> lengths(model, budget);
  std::vector<WitnessSample<M>> samples;
  if (n.samples == "random") {
    samples = random_samples(model, n.radius, n.count, n.support, c.seed, lengths);
  } else {
    Element<M> k = parse_list(model, {n.translate_by}, "norms.translate_by").front();
    const std::size_t kl = *word_length(model, k, 64);
    const std::size_t rmax = n.radii.empty() ? 0 : *std::max_element(n.radii.begin(), n.radii.end());
    auto ball = ball_enumerate(model, rmax, budget);
    for (std::size_t R : n.radii) {
      std::vector<Element<M>> S;
      for (std::size_t i = 0; i < ball.size(); ++i)
        if (ball.lengths[i] <= R && H.contains(ball.elements[i])) S.push_back(ball.elements[i]);
      auto s = translate_pair(model, S, k, lengths, R + kl, R);
      s.label = "translate R=" + std::to_string(R);
      samples.push_back(std::move(s));
    }
  }
  auto w = n.witness == "polynomial" ? RDWitness<M>::polynomial(n.constant, n.exponent)
                                     : RDWitness<M>::polynomial_ball(n.constant, n.exponent);
  WitnessOptions opt;
  opt.opnorm = n.opnorm;
  opt.seed = c.seed;
  WitnessReport rep;
  try {
    rep = rd_witness_test(X, w, samples, n.q_list, opt);
  } catch (const InvalidWitness& e) {
    throw ConfigError(std::string("field 'norms': ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'norms': ") + e.what());
  }
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"radius", r.radius},
                    {"label", r.label},
                    {"bound", r.bound},
                    {"q", r.q},
                    {"lhs_lower", r.lhs_lower},
                    {"rhs", r.rhs},
                    {"violated", r.violated}});
  }
  Json j = report_header(c, "norms", {"norms.herz_lower_pushforward", "norms.opnorm_lower", "norms.witness_rhs"});
  j["witness"] = {{"kind", to_string(w.kind)}, {"constant", w.constant}, {"exponent", w.exponent}};
  j["rows"] = rows;
  j["violations"] = rep.violations;
  j["status"] = rep.status();
  j["first_violation_radius"] = rep.first_violation_radius ? Json(*rep.first_violation_radius) : Json(nullptr);
  RunResult out;
  out.files["norms.json"] = dump(j);
  out.stdout_text = "norms: witness " + rep.status() + " (" + std::to_string(rep.violations) + " violations)\n";
  out.exit_code = rep.violations ? kExitCheckFailed : kExitOk;
  return out;
}

inline Json verify_report_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& ch : r.checks) checks.push_back({{"name", ch.name}, {"status", ch.status()}, {"details", ch.details}});
  return Json{{"example_id", r.example_id}, {"checks", checks}, {"elapsed_ms", r.elapsed_ms}};
}

inline RunResult cmd_verify(const ExperimentConfig& c, const std::vector<std::string>& args, bool timing) {
  if (args.size() != 1) throw ConfigError("verify takes exactly one example id");
  VerifyReport r;
  try {
    r = verify_named_example(args[0], c.verify);
  } catch (const UnknownExample& e) {
    throw ConfigError(e.what());
  }
  if (!timing) r.elapsed_ms = 0;
  Json j = verify_report_json(r);
  j["config_digest"] = config_digest(c);
  j["value_mode"] = "exact";
  j["rules"] = Json::array({"lattice.exact_integer_checks"});
  RunResult out;
  out.files["verify-" + args[0] + ".json"] = dump(j);
  out.stdout_text = dump(verify_report_json(r));
  out.exit_code = r.passed() ? kExitOk : kExitCheckFailed;
  return out;
}

/// Parses a CSV cell as a number when the whole cell is numeric.
inline Json csv_cell(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!s.empty() && ec == std::errc() && p == s.data() + s.size()) return v;
  return s;
}

/// Merges every CSV and JSON report in dir into one summary object.
inline RunResult cmd_report(const ExperimentConfig& c, const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError("report: output directory '" + dir.string() + "' missing");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Json csv = Json::object(), reports = Json::object();
  for (const auto& f : files) {
    const std::string name = f.filename().string();
    if (name == "summary.json") continue;
    std::ifstream in(f);
    std::stringstream buf;
    buf << in.rdbuf();
    if (f.extension() == ".csv") {
      std::string line;
      Json rows = Json::array(), header = Json::array();
      bool first = true;
      while (std::getline(buf, line)) {
        if (line.empty()) continue;
        Json cells = Json::array();
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(first ? Json(cell) : csv_cell(cell));
        if (first) {
          header = cells;
          first = false;
        } else {
          rows.push_back(cells);
        }
      }
      csv[name] = {{"header", header}, {"rows", rows}};
    } else if (f.extension() == ".json") {
      try {
        reports[name] = Json::parse(buf.str());
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("report: " + name + " is not valid JSON: " + e.what());
      }
    }
  }
  Json j = report_header(c, "report", {"report.merge"});
  j["csv"] = csv;
  j["reports"] = reports;
  RunResult out;
  out.files["summary.json"] = dump(j);
  out.stdout_text = "report: merged " + std::to_string(csv.size()) + " CSV and " + std::to_string(reports.size()) +
                    " JSON files\n";
  return out;
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"walk",  "spectral", "growth", "classify-free",
                                                 "norms", "verify",   "report"};
  return names;
}

/// Runs one command without touching the filesystem (except `report`, which reads out_dir).
inline RunResult run(const ExperimentConfig& c, const RunOptions& opt) {
  if (opt.command == "verify") return cmd_verify(c, opt.args, opt.timing);
  if (opt.command == "report") return cmd_report(c, opt.out_dir);
  AnyModel model = build_group(c.group);
  if (opt.command == "classify-free") {
    const auto* F = std::get_if<FreeGroup>(&model);
    if (!F) throw ConfigError("field 'group.kind': classify-free needs a free group");
    return cmd_classify_free(c, *F, opt.args);
  }
  if (!opt.args.empty()) throw ConfigError(opt.command + " takes no positional arguments");
  return std::visit(
      [&](const auto& m) -> RunResult {
        if (opt.command == "walk") return c.exact ? cmd_walk<Rational>(c, m) : cmd_walk<double>(c, m);
        if (opt.command == "spectral") return c.exact ? cmd_spectral<Rational>(c, m) : cmd_spectral<double>(c, m);
        if (opt.command == "growth") return cmd_growth(c, m);
        if (opt.command == "norms") return cmd_norms(c, m);
        throw ConfigError("unknown command '" + opt.command + "'");
      },
      model);
}

/// run() plus error mapping to exit codes; writes files into out_dir.
inline int run_and_write(const ExperimentConfig& c, const RunOptions& opt, std::ostream& os, std::ostream& err) {
  RunResult r;
  try {
    r = run(c, opt);
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return kExitBudget;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::filesystem::create_directories(opt.out_dir);
  for (const auto& [name, body] : r.files) {
    std::ofstream f(opt.out_dir / name, std::ios::binary);
    f << body;
  }
  os << r.stdout_text;
  return r.exit_code;
}

}  // namespace cwl::cli
