#pragma once

// Independent index oracle for subgroups of free groups: searches all
// transitive permutation actions of F_r on d points in which every subgroup
// generator fixes point 0. The largest such d is [F_r : H] when the index is finite.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "cwl/group/free_group.hpp"

namespace oracle {

using Perm = std::vector<int>;

struct Action {
  int degree = 0;
  std::vector<Perm> gens;  // one permutation per positive letter
  std::vector<Perm> invs;

  int apply(int point, const cwl::Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      int x = w.at(i);
      point = x > 0 ? gens[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(point)]
                    : invs[static_cast<std::size_t>(-x - 1)][static_cast<std::size_t>(point)];
    }
    return point;
  }
};

inline bool transitive(const Action& a) {
  std::vector<int> seen(static_cast<std::size_t>(a.degree), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    for (const auto& g : a.gens) {
      int q = g[static_cast<std::size_t>(p)];
      if (!seen[static_cast<std::size_t>(q)]) {
        seen[static_cast<std::size_t>(q)] = 1;
        ++count;
        stack.push_back(q);
      }
    }
  }
  return count == a.degree;
}

/// Some transitive action of degree d with all generators fixing 0, if any.
inline std::optional<Action> find_action(int rank, int d, const std::vector<cwl::Word>& gens) {
  std::vector<Perm> all;
  Perm p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::size_t> choice(static_cast<std::size_t>(rank), 0);
  while (true) {
    Action a;
    a.degree = d;
    for (auto c : choice) {
      a.gens.push_back(all[c]);
      Perm inv(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) inv[static_cast<std::size_t>(all[c][static_cast<std::size_t>(i)])] = i;
      a.invs.push_back(inv);
    }
    bool ok = true;
    for (const auto& w : gens) ok = ok && a.apply(0, w) == 0;
    if (ok && transitive(a)) return a;
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == all.size()) choice[k++] = 0;
    if (k == choice.size()) return std::nullopt;
  }
}

/// Largest degree <= max_degree admitting such an action, and that action.
inline std::pair<int, Action> max_degree_action(int rank, int max_degree, const std::vector<cwl::Word>& gens) {
  std::pair<int, Action> best{1, {}};
  for (int d = 1; d <= max_degree; ++d) {
    if (auto a = find_action(rank, d, gens)) best = {d, *a};
  }
  return best;
}

}  // namespace oracle
