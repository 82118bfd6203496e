#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"
#include "cwl/lattice/examples.hpp"

namespace cwl::cli {

using Json = nlohmann::json;

struct GroupSpec {
  std::string kind = "free";  // free | abelian | matrix
  int rank = 2;               // free
  int dim = 2;                // abelian
  std::string preset;         // matrix: sl<n> | heisenberg | K
  int n = 0;                  // matrix with explicit generators
  std::vector<std::string> generators;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct SubgroupSpec {
  // trivial | whole | generated | unitriangular | line_stabilizer | subspace_stabilizer | congruence | cyclic
  std::string kind = "trivial";
  std::vector<std::string> generators;
  std::vector<long> vector;
  std::vector<std::vector<long>> basis;
  long level = 0;
  std::string matrix;
  friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

struct MeasureSpec {
  bool srw = true;
  std::map<std::string, std::string> weights;  // element string -> rational string
  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

struct WalkParams {
  std::size_t n_max = 12;
  std::vector<double> alphas{2.0};
  std::vector<double> q_list{2.0};
  std::optional<std::pair<double, double>> window;
  friend bool operator==(const WalkParams&, const WalkParams&) = default;
};

struct GrowthParams {
  std::size_t radius = 8;
  std::vector<std::string> conjugators;
  std::optional<std::pair<std::size_t, std::size_t>> window;
  bool co_amenable = false;
  std::string co_amenable_provenance;
  bool export_edges = false;
  friend bool operator==(const GrowthParams&, const GrowthParams&) = default;
};

struct NormsParams {
  std::string witness = "polynomial";  // polynomial | polynomial_ball
  double constant = 1;
  double exponent = 1;
  std::string samples = "random";  // random | translates
  std::size_t count = 20;
  std::size_t radius = 3;
  std::size_t support = 4;
  std::vector<std::size_t> radii{1, 2, 3, 4};
  std::string translate_by;
  std::vector<double> q_list{2.0};
  bool opnorm = true;
  friend bool operator==(const NormsParams&, const NormsParams&) = default;
};

struct ExperimentConfig {
  GroupSpec group;
  SubgroupSpec subgroup;
  MeasureSpec measure;
  bool exact = false;
  std::uint64_t seed = 1;
  std::size_t budget_elems = 20'000'000;
  unsigned threads = 1;
  WalkParams walk;
  WalkParams spectral{12, {}, {2.0, 1.5, 4.0 / 3.0, 8.0 / 7.0}, std::nullopt};
  GrowthParams growth;
  NormsParams norms;
  VerifyOptions verify;
};

inline bool operator==(const VerifyOptions& a, const VerifyOptions& b) {
  return a.transversal_max_n == b.transversal_max_n && a.transversal_samples == b.transversal_samples &&
         a.k_growth_radius == b.k_growth_radius && a.parabolic_m == b.parabolic_m && a.aj_max_j == b.aj_max_j &&
         a.heisenberg_radius == b.heisenberg_radius && a.malnormal_radius == b.malnormal_radius && a.seed == b.seed;
}

inline bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.group == b.group && a.subgroup == b.subgroup && a.measure == b.measure && a.exact == b.exact &&
         a.seed == b.seed && a.budget_elems == b.budget_elems && a.threads == b.threads && a.walk == b.walk &&
         a.spectral == b.spectral && a.growth == b.growth && a.norms == b.norms && a.verify == b.verify;
}

namespace detail {

/// Typed field reader that reports the dotted path of the offending field.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  template <class T>
  void get(const char* key, T& out) const {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("field '" + field(key) + "': " + e.what());
    }
    if constexpr (std::is_unsigned_v<T>) {
      if (j_.at(key).is_number_integer() && !j_.at(key).is_number_unsigned())
        throw ConfigError("field '" + field(key) + "': must be nonnegative");
    }
  }

  Reader child(const char* key) const { return Reader(j_.at(key), field(key)); }
  const Json& raw(const char* key) const { return j_.at(key); }
  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("field '" + (path_.empty() ? std::string("<root>") : path_) + "': " + what);
  }

  void reject_unknown(std::initializer_list<const char*> known) const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) throw ConfigError("field '" + field(it.key().c_str()) + "': unknown key");
    }
  }

 private:
  const Json& j_;
  std::string path_;
};

inline Json window_json(const std::optional<std::pair<double, double>>& w) {
  return w ? Json::array({w->first, w->second}) : Json(nullptr);
}

template <class T>
std::optional<std::pair<T, T>> read_window(const Reader& r, const char* key) {
  if (!r.has(key)) return std::nullopt;
  std::vector<T> v;
  r.get(key, v);
  if (v.size() != 2 || v[0] > v[1]) throw ConfigError("field '" + r.field(key) + "': expected [lo, hi] with lo <= hi");
  return std::make_pair(v[0], v[1]);
}

inline Json walk_json(const WalkParams& w, bool with_alphas) {
  Json j{{"n_max", w.n_max}, {"q_list", w.q_list}, {"window", window_json(w.window)}};
  if (with_alphas) j["alphas"] = w.alphas;
  return j;
}

inline WalkParams read_walk(const Reader& r, WalkParams w, bool with_alphas) {
  if (with_alphas) {
    r.reject_unknown({"n_max", "alphas", "q_list", "window"});
    r.get("alphas", w.alphas);
  } else {
    r.reject_unknown({"n_max", "q_list", "window"});
  }
  r.get("n_max", w.n_max);
  r.get("q_list", w.q_list);
  w.window = read_window<double>(r, "window");
  return w;
}

}  // namespace detail

/// Canonical JSON form; every field is emitted so that parse(emit(c)) == c.
inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["group"] = {{"kind", c.group.kind}};
  if (c.group.kind == "free") j["group"]["rank"] = c.group.rank;
  if (c.group.kind == "abelian") j["group"]["dim"] = c.group.dim;
  if (c.group.kind == "matrix") {
    if (!c.group.preset.empty()) j["group"]["preset"] = c.group.preset;
    if (!c.group.generators.empty()) {
      j["group"]["n"] = c.group.n;
      j["group"]["generators"] = c.group.generators;
    }
  }
  const auto& s = c.subgroup;
  j["subgroup"] = {{"kind", s.kind}};
  if (!s.generators.empty()) j["subgroup"]["generators"] = s.generators;
  if (!s.vector.empty()) j["subgroup"]["vector"] = s.vector;
  if (!s.basis.empty()) j["subgroup"]["basis"] = s.basis;
  if (s.level) j["subgroup"]["level"] = s.level;
  if (!s.matrix.empty()) j["subgroup"]["matrix"] = s.matrix;
  j["measure"] = c.measure.srw ? Json("srw") : Json(c.measure.weights);
  j["value_mode"] = c.exact ? "exact" : "float";
  j["seed"] = c.seed;
  j["budget_elems"] = c.budget_elems;
  j["threads"] = c.threads;
  j["walk"] = detail::walk_json(c.walk, true);
  j["spectral"] = detail::walk_json(c.spectral, false);
  const auto& g = c.growth;
  j["growth"] = {{"radius", g.radius},
                 {"conjugators", g.conjugators},
                 {"window", g.window ? Json::array({g.window->first, g.window->second}) : Json(nullptr)},
                 {"co_amenable", g.co_amenable},
                 {"co_amenable_provenance", g.co_amenable_provenance},
                 {"export_edges", g.export_edges}};
  const auto& n = c.norms;
  j["norms"] = {{"witness", n.witness}, {"constant", n.constant}, {"exponent", n.exponent},
                {"samples", n.samples}, {"count", n.count},       {"radius", n.radius},
                {"support", n.support}, {"radii", n.radii},       {"translate_by", n.translate_by},
                {"q_list", n.q_list},   {"opnorm", n.opnorm}};
  const auto& v = c.verify;
  j["verify"] = {{"transversal_max_n", v.transversal_max_n}, {"transversal_samples", v.transversal_samples},
                 {"k_growth_radius", v.k_growth_radius},     {"parabolic_m", v.parabolic_m},
                 {"aj_max_j", v.aj_max_j},                   {"heisenberg_radius", v.heisenberg_radius},
                 {"malnormal_radius", v.malnormal_radius},   {"seed", v.seed}};
  return j;
}

inline ExperimentConfig from_json(const Json& j) {
  using detail::Reader;
  ExperimentConfig c;
  Reader root(j, "");
  root.reject_unknown({"group", "subgroup", "measure", "value_mode", "seed", "budget_elems", "threads", "walk",
                       "spectral", "growth", "norms", "verify"});
  if (root.has("group")) {
    auto r = root.child("group");
    r.reject_unknown({"kind", "rank", "dim", "preset", "n", "generators"});
    r.get("kind", c.group.kind);
    r.get("rank", c.group.rank);
    r.get("dim", c.group.dim);
    r.get("preset", c.group.preset);
    r.get("n", c.group.n);
    r.get("generators", c.group.generators);
    if (c.group.kind != "free" && c.group.kind != "abelian" && c.group.kind != "matrix")
      r.fail("kind must be free, abelian or matrix");
    if (c.group.kind == "matrix" && c.group.preset.empty() == c.group.generators.empty())
      r.fail("matrix group needs exactly one of preset or generators");
    if (c.group.kind == "matrix" && !c.group.generators.empty() && c.group.n < 1) r.fail("matrix group needs n >= 1");
  }
  if (root.has("subgroup")) {
    auto r = root.child("subgroup");
    r.reject_unknown({"kind", "generators", "vector", "basis", "level", "matrix"});
    auto& s = c.subgroup;
    r.get("kind", s.kind);
    r.get("generators", s.generators);
    r.get("vector", s.vector);
    r.get("basis", s.basis);
    r.get("level", s.level);
    r.get("matrix", s.matrix);
    static const char* kinds[] = {"trivial",         "whole",       "generated", "unitriangular", "line_stabilizer",
                                  "subspace_stabilizer", "congruence", "cyclic"};
    bool ok = false;
    for (const char* k : kinds) ok = ok || s.kind == k;
    if (!ok) r.fail("unknown subgroup kind '" + s.kind + "'");
    if (s.kind == "congruence" && s.level < 1) r.fail("congruence needs level >= 1");
  }
  if (root.has("measure")) {
    const Json& m = root.raw("measure");
    if (m.is_string()) {
      if (m.get<std::string>() != "srw") throw ConfigError("field 'measure': expected \"srw\" or an object");
    } else if (m.is_object()) {
      c.measure.srw = false;
      for (auto it = m.begin(); it != m.end(); ++it) {
        if (!it.value().is_string())
          throw ConfigError("field 'measure." + it.key() + "': weight must be a rational string such as \"1/4\"");
        try {
          parse_rational(it.value().get<std::string>());
        } catch (const std::exception& e) {
          throw ConfigError("field 'measure." + it.key() + "': " + e.what());
        }
        c.measure.weights[it.key()] = it.value().get<std::string>();
      }
      if (c.measure.weights.empty()) throw ConfigError("field 'measure': empty support");
    } else {
      throw ConfigError("field 'measure': expected \"srw\" or an object");
    }
  }
  if (root.has("value_mode")) {
    std::string mode;
    root.get("value_mode", mode);
    if (mode != "exact" && mode != "float") throw ConfigError("field 'value_mode': expected exact or float");
    c.exact = mode == "exact";
  }
  root.get("seed", c.seed);
  root.get("budget_elems", c.budget_elems);
  root.get("threads", c.threads);
  if (root.has("walk")) c.walk = detail::read_walk(root.child("walk"), c.walk, true);
  if (root.has("spectral")) c.spectral = detail::read_walk(root.child("spectral"), c.spectral, false);
  if (root.has("growth")) {
    auto r = root.child("growth");
    r.reject_unknown({"radius", "conjugators", "window", "co_amenable", "co_amenable_provenance", "export_edges"});
    r.get("radius", c.growth.radius);
    r.get("conjugators", c.growth.conjugators);
    c.growth.window = detail::read_window<std::size_t>(r, "window");
    r.get("co_amenable", c.growth.co_amenable);
    r.get("co_amenable_provenance", c.growth.co_amenable_provenance);
    r.get("export_edges", c.growth.export_edges);
    if (c.growth.co_amenable && c.growth.co_amenable_provenance.empty())
      r.fail("co_amenable requires co_amenable_provenance");
  }
  if (root.has("norms")) {
    auto r = root.child("norms");
    r.reject_unknown({"witness", "constant", "exponent", "samples", "count", "radius", "support", "radii",
                      "translate_by", "q_list", "opnorm"});
    auto& n = c.norms;
    r.get("witness", n.witness);
    r.get("constant", n.constant);
    r.get("exponent", n.exponent);
    r.get("samples", n.samples);
    r.get("count", n.count);
    r.get("radius", n.radius);
    r.get("support", n.support);
    r.get("radii", n.radii);
    r.get("translate_by", n.translate_by);
    r.get("q_list", n.q_list);
    r.get("opnorm", n.opnorm);
    if (n.witness != "polynomial" && n.witness != "polynomial_ball") r.fail("witness must be polynomial or polynomial_ball");
    if (n.samples != "random" && n.samples != "translates") r.fail("samples must be random or translates");
    if (n.samples == "translates" && n.translate_by.empty()) r.fail("translates need translate_by");
  }
  if (root.has("verify")) {
    auto r = root.child("verify");
    r.reject_unknown({"transversal_max_n", "transversal_samples", "k_growth_radius", "parabolic_m", "aj_max_j",
                      "heisenberg_radius", "malnormal_radius", "seed"});
    auto& v = c.verify;
    r.get("transversal_max_n", v.transversal_max_n);
    r.get("transversal_samples", v.transversal_samples);
    r.get("k_growth_radius", v.k_growth_radius);
    r.get("parabolic_m", v.parabolic_m);
    r.get("aj_max_j", v.aj_max_j);
    r.get("heisenberg_radius", v.heisenberg_radius);
    r.get("malnormal_radius", v.malnormal_radius);
    r.get("seed", v.seed);
  }
  return c;
}

/// Parses config text; syntax errors carry line and column.
inline ExperimentConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  return from_json(j);
}

inline std::string emit_config(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

/// FNV-1a of the canonical compact JSON form.
inline std::string config_digest(const ExperimentConfig& c) { return hex64(fnv1a(to_json(c).dump())); }

}  // namespace cwl::cli
