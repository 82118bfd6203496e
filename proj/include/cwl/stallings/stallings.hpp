#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/group/free_group.hpp"

namespace cwl {

/// Folded core graph of a finitely generated subgroup of F_r. Vertex 0 is the basepoint.
class StallingsGraph {
 public:
  static constexpr int kNone = -1;

  StallingsGraph(int rank, int vertices) : rank_(rank), trans_(static_cast<std::size_t>(vertices), row()) {}

  int rank() const noexcept { return rank_; }
  int vertex_count() const noexcept { return static_cast<int>(trans_.size()); }

  /// Slot of a signed letter: a -> 0, a^-1 -> 1, b -> 2, ...
  static int slot(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

  int next(int v, int letter) const { return trans_[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot(letter))]; }

  /// Positive-label edges (u, letter, v) in vertex then letter order.
  std::vector<std::tuple<int, int, int>> edges() const {
    std::vector<std::tuple<int, int, int>> out;
    for (int v = 0; v < vertex_count(); ++v) {
      for (int x = 1; x <= rank_; ++x) {
        int w = next(v, x);
        if (w != kNone) out.emplace_back(v, x, w);
      }
    }
    return out;
  }

  std::size_t edge_count() const { return edges().size(); }

  /// True when every vertex has all 2r transitions.
  bool complete() const {
    for (const auto& r : trans_) {
      for (int t : r) {
        if (t == kNone) return false;
      }
    }
    return true;
  }

  bool is_folded() const {
    // Outgoing uniqueness is structural; check incoming uniqueness per label.
    for (int x = 1; x <= rank_; ++x) {
      std::vector<int> seen(trans_.size(), 0);
      for (int v = 0; v < vertex_count(); ++v) {
        int w = next(v, x);
        if (w != kNone && seen[static_cast<std::size_t>(w)]++ > 0) return false;
      }
    }
    return true;
  }

  int degree(int v) const {
    int d = 0;
    for (int t : trans_[static_cast<std::size_t>(v)]) d += t != kNone ? 1 : 0;
    return d;
  }

  /// End vertex of reading w from the basepoint inside the core, if the path exists.
  std::optional<int> read(const Word& w, int start = 0) const {
    int v = start;
    for (std::size_t i = 0; i < w.size(); ++i) {
      v = next(v, w.at(i));
      if (v == kNone) return std::nullopt;
    }
    return v;
  }

  bool accepts(const Word& w) const {
    auto end = read(w);
    return end && *end == 0;
  }

  /// State of the full Schreier graph of right cosets H w: the core vertex where
  /// the path leaves the core and the unread tail (empty if it stays in the core).
  std::pair<int, Word> state_after(const Word& w) const {
    int v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int u = next(v, w.at(i));
      if (u == kNone) {
        Word tail;
        tail.letters = w.letters.substr(i);
        return {v, tail};
      }
      v = u;
    }
    return {v, Word{}};
  }

  std::string to_dot(const std::string& name = "stallings") const {
    std::ostringstream out;
    out << "digraph " << name << " {\n  node [shape=circle];\n  0 [shape=doublecircle];\n";
    for (auto [u, x, v] : edges()) out << "  " << u << " -> " << v << " [label=\"" << char('a' + x - 1) << "\"];\n";
    out << "}\n";
    return out.str();
  }

  // Internal construction access.
  void set_edge(int u, int letter, int v) {
    trans_[static_cast<std::size_t>(u)][static_cast<std::size_t>(slot(letter))] = v;
    trans_[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot(-letter))] = u;
  }

 private:
  std::vector<int> row() const { return std::vector<int>(static_cast<std::size_t>(2 * rank_), kNone); }

  int rank_;
  std::vector<std::vector<int>> trans_;
};

/// Folds the bouquet of generator loops, trims hanging vertices and renumbers in BFS order.
inline StallingsGraph fold(int rank, const std::vector<Word>& generators) {
  if (rank < 1) throw EmptyAlphabet();
  FreeGroup F(rank);
  struct Edge {
    int u, x, v;
  };
  std::vector<Edge> edges;
  int n = 1;
  for (const auto& raw : generators) {
    Word w = F.reduce(raw);
    if (w.empty()) continue;
    int prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int target = i + 1 == w.size() ? 0 : n++;
      int x = w.at(i);
      if (x > 0) {
        edges.push_back({prev, x, target});
      } else {
        edges.push_back({target, -x, prev});
      }
      prev = target;
    }
  }

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);  // smaller id survives
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out_edge, in_edge;
    for (const auto& e : edges) {
      int u = find(e.u), v = find(e.v);
      auto [it, fresh] = out_edge.emplace(std::make_pair(u, e.x), v);
      if (!fresh && find(it->second) != v) changed |= unite(it->second, v);
      u = find(e.u);
      v = find(e.v);
      auto [jt, fresh2] = in_edge.emplace(std::make_pair(v, e.x), u);
      if (!fresh2 && find(jt->second) != u) changed |= unite(jt->second, u);
    }
  }

  // Deduplicate, then trim degree-one non-basepoint vertices.
  std::map<std::tuple<int, int, int>, bool> unique;
  for (const auto& e : edges) unique[{find(e.u), e.x, find(e.v)}] = true;
  std::vector<std::tuple<int, int, int>> folded;
  for (const auto& [k, _] : unique) folded.push_back(k);
  while (true) {
    std::map<int, int> deg;
    for (auto [u, x, v] : folded) {
      deg[u] += 1;
      deg[v] += 1;
    }
    std::vector<std::tuple<int, int, int>> kept;
    bool trimmed = false;
    for (auto e : folded) {
      auto [u, x, v] = e;
      if ((u != 0 && deg[u] == 1) || (v != 0 && deg[v] == 1)) {
        trimmed = true;
        continue;
      }
      kept.push_back(e);
    }
    folded = std::move(kept);
    if (!trimmed) break;
  }

  // BFS renumbering from the basepoint in letter order a, a^-1, b, ...
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (signed letter, target)
  for (auto [u, x, v] : folded) {
    adj[u].emplace_back(x, v);
    adj[v].emplace_back(-x, u);
  }
  for (auto& [v, list] : adj) {
    std::sort(list.begin(), list.end(), [](auto a, auto b) {
      return StallingsGraph::slot(a.first) < StallingsGraph::slot(b.first);
    });
  }
  std::map<int, int> label;
  std::deque<int> queue = {0};
  label[0] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (auto [x, w] : adj[v]) {
      if (label.emplace(w, static_cast<int>(label.size())).second) queue.push_back(w);
    }
  }
  StallingsGraph g(rank, static_cast<int>(label.size()));
  for (auto [u, x, v] : folded) g.set_edge(label.at(u), x, label.at(v));
  return g;
}

struct RankIndexResult {
  long rank = 0;
  std::optional<long> index;  // nullopt means infinite
};

/// rank = E - V + 1 of the core; index = V for a complete automaton, else infinite.
inline RankIndexResult rank_index(const StallingsGraph& g) {
  RankIndexResult out;
  out.rank = static_cast<long>(g.edge_count()) - g.vertex_count() + 1;
  if (g.complete()) out.index = g.vertex_count();
  return out;
}

enum class FreeVerdict { SLC_yes_finite_index, SLC_yes_trivial_or_Z, SLC_no_rank_ge2_infinite_index };

inline std::string to_string(FreeVerdict v) {
  switch (v) {
    case FreeVerdict::SLC_yes_finite_index: return "SLC_yes_finite_index";
    case FreeVerdict::SLC_yes_trivial_or_Z: return "SLC_yes_trivial_or_Z";
    case FreeVerdict::SLC_no_rank_ge2_infinite_index: return "SLC_no_rank_ge2_infinite_index";
  }
  return "?";
}

struct FreeClassification {
  FreeVerdict verdict;
  RankIndexResult rank_index;
  std::string rule;
};

/// Trichotomy for finitely generated H <= F_n: finite index, cyclic or trivial, or neither.
inline FreeClassification classify_pair_free(int n, const std::vector<Word>& generators) {
  if (n < 2) throw Error("classification requires free rank n >= 2");
  auto g = fold(n, generators);
  FreeClassification out{FreeVerdict::SLC_no_rank_ge2_infinite_index, rank_index(g), ""};
  if (out.rank_index.index) {
    out.verdict = FreeVerdict::SLC_yes_finite_index;
    out.rule = "free.finite_index";
  } else if (out.rank_index.rank <= 1) {
    out.verdict = FreeVerdict::SLC_yes_trivial_or_Z;
    out.rule = "free.cyclic_or_trivial";
  } else {
    out.rule = "free.rank_ge2_infinite_index";
  }
  return out;
}

}  // namespace cwl
