#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwl/coset/oracle.hpp"
#include "cwl/group/ball.hpp"
#include "cwl/growth/series.hpp"

namespace cwl {

using CosetId = std::uint32_t;

/// X = G/H with dense coset ids assigned in first-seen order, a representative
/// per coset and cached transitions for registered letters. The origin o = eH has id 0.
template <GroupModel M>
class CosetSpace {
 public:
  static constexpr std::size_t kDefaultFallbackLimit = 1'000'000;

  CosetSpace(const M& model, SubgroupOracle<M> oracle, std::size_t fallback_limit = kDefaultFallbackLimit)
      : model_(&model), oracle_(std::move(oracle)), fallback_limit_(fallback_limit) {
    intern(model.identity());
    for (const auto& s : model.generators()) generator_letters_.push_back(register_letter(s));
  }

  const M& model() const noexcept { return *model_; }
  const SubgroupOracle<M>& oracle() const noexcept { return oracle_; }
  CosetId origin() const noexcept { return 0; }
  std::size_t size() const noexcept { return reps_.size(); }

  const Element<M>& rep(CosetId x) const {
    if (x >= reps_.size()) throw UnknownKey("coset id " + std::to_string(x));
    return reps_[x];
  }

  const std::string& key(CosetId x) const {
    if (x >= keys_.size()) throw UnknownKey("coset id " + std::to_string(x));
    return keys_[x];
  }

  /// Canonical key of gH (fallback: key of the first stored representative of gH).
  std::string coset_key(const Element<M>& g) const {
    if (oracle_.has_key()) return oracle_.key(g);
    if (auto hit = scan(g)) return keys_[*hit];
    return fallback_key(g);
  }

  /// Id of gH, storing g as representative if the coset is new.
  CosetId id_of(const Element<M>& g) { return intern(g); }

  std::optional<CosetId> find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// x -> g x.
  CosetId act(const Element<M>& g, CosetId x) { return intern(model_->multiply(g, rep(x))); }

  /// Key-level action; UnknownKey if x was never produced by this space.
  std::string act_key(const Element<M>& g, const std::string& x) {
    auto id = find(x);
    if (!id) throw UnknownKey("coset key " + to_hex(x) + " was not produced by this space");
    return keys_[act(g, *id)];
  }

  /// Registers g for cached action; generators are letters 0..|S|-1.
  std::size_t register_letter(const Element<M>& g) {
    auto [it, fresh] = letter_index_.emplace(model_->encode(g), letters_.size());
    if (!fresh) return it->second;
    letters_.push_back(g);
    trans_.emplace_back();
    return letters_.size() - 1;
  }

  std::size_t letter_count() const noexcept { return letters_.size(); }
  const Element<M>& letter(std::size_t i) const { return letters_.at(i); }

  /// Action of the i-th generator of the model.
  CosetId act_generator(std::size_t i, CosetId x) { return act_letter(generator_letters_[i], x); }

  CosetId act_letter(std::size_t letter, CosetId x) {
    auto& table = trans_.at(letter);
    if (table.size() <= x) table.resize(std::max<std::size_t>(x + 1, reps_.size()), kUnset);
    if (table[x] == kUnset) {
      CosetId y = act(letters_[letter], x);
      trans_[letter][x] = y;
      return y;
    }
    return table[x];
  }

 private:
  static constexpr CosetId kUnset = 0xffffffffu;

  std::optional<CosetId> scan(const Element<M>& g) const {
    for (CosetId i = 0; i < reps_.size(); ++i) {
      if (oracle_.contains(model_->multiply(model_->inverse(reps_[i]), g))) return i;
    }
    return std::nullopt;
  }

  std::string fallback_key(const Element<M>& g) const { return "scan:" + model_->encode(g); }

  CosetId intern(const Element<M>& g) {
    std::string k;
    if (oracle_.has_key()) {
      k = oracle_.key(g);
    } else {
      if (auto hit = scan(g)) return *hit;
      if (reps_.size() >= fallback_limit_) {
        throw FallbackTooSlow("linear-scan table exceeds " + std::to_string(fallback_limit_) + " cosets");
      }
      k = fallback_key(g);
    }
    auto [it, fresh] = index_.emplace(std::move(k), static_cast<CosetId>(reps_.size()));
    if (fresh) {
      reps_.push_back(g);
      keys_.push_back(it->first);
    }
    return it->second;
  }

  const M* model_;
  SubgroupOracle<M> oracle_;
  std::size_t fallback_limit_;
  std::vector<Element<M>> reps_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, CosetId> index_;
  std::vector<Element<M>> letters_;
  std::unordered_map<std::string, std::size_t> letter_index_;
  std::vector<std::vector<CosetId>> trans_;
  std::vector<std::size_t> generator_letters_;
};

struct SchreierEdge {
  CosetId src;
  std::size_t gen;
  CosetId dst;
};

/// BFS from o using the generator action; counts |B_X(o, r)| for r <= R.
template <GroupModel M>
GrowthSeries schreier_ball(CosetSpace<M>& X, std::size_t radius, const Budget& budget = {},
                           const std::function<void(const SchreierEdge&)>& on_edge = {}) {
  GrowthSeries series;
  series.source = SeriesSource::SchreierBall;
  std::vector<std::uint8_t> seen(X.size(), 0);
  auto mark = [&](CosetId y) {
    if (seen.size() <= y) seen.resize(static_cast<std::size_t>(y) + 1, 0);
    if (seen[y]) return false;
    seen[y] = 1;
    return true;
  };
  std::vector<CosetId> frontier = {X.origin()};
  mark(X.origin());
  std::uint64_t total = 1;
  series.counts.push_back(total);
  const std::size_t gens = X.model().generators().size();
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<CosetId> next;
    for (CosetId x : frontier) {
      for (std::size_t s = 0; s < gens; ++s) {
        CosetId y = X.act_generator(s, x);
        if (on_edge) on_edge({x, s, y});
        if (mark(y)) {
          next.push_back(y);
          if (++total > budget.max_elements) throw BudgetExceeded(r, budget.max_elements);
        }
      }
    }
    series.counts.push_back(total);
    frontier = std::move(next);
  }
  return series;
}

/// Edge list CSV `src_key_hex,gen_label,dst_key_hex` of B_X(o, R).
template <GroupModel M>
std::string schreier_edges_csv(CosetSpace<M>& X, std::size_t radius, const Budget& budget = {}) {
  std::vector<SchreierEdge> edges;
  schreier_ball(X, radius, budget, [&](const SchreierEdge& e) { edges.push_back(e); });
  std::string out = "src_key_hex,gen_label,dst_key_hex\n";
  for (const auto& e : edges) {
    out += to_hex(X.key(e.src)) + "," + X.model().generator_labels()[e.gen] + "," + to_hex(X.key(e.dst)) + "\n";
  }
  return out;
}

/// Growth CSV `radius,ball,sphere`.
inline std::string schreier_growth_csv(const GrowthSeries& s) {
  std::string out = "radius,ball,sphere\n";
  auto sph = s.spheres();
  for (std::size_t r = 0; r < s.counts.size(); ++r)
    out += std::to_string(r) + "," + std::to_string(s.counts[r]) + "," + std::to_string(sph[r]) + "\n";
  return out;
}

}  // namespace cwl
