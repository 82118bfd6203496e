#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/group/model.hpp"

namespace cwl {

/// Upper bound on the number of stored elements for any enumeration.
struct Budget {
  std::size_t max_elements = 20'000'000;
};

template <GroupModel M>
struct Ball {
  std::vector<Element<M>> elements;   // BFS order
  std::vector<std::uint32_t> lengths; // word length of each element
  std::vector<std::size_t> spheres;   // a_0 .. a_R

  std::size_t radius() const { return spheres.empty() ? 0 : spheres.size() - 1; }
  std::size_t size() const { return elements.size(); }

  /// |B(r)| for r <= radius.
  std::size_t ball_size(std::size_t r) const {
    std::size_t total = 0;
    for (std::size_t k = 0; k <= r && k < spheres.size(); ++k) total += spheres[k];
    return total;
  }
};

/// Breadth-first enumeration of B(R) in generator-list order.
template <GroupModel M>
Ball<M> ball_enumerate(const M& model, std::size_t radius, const Budget& budget = {}) {
  Ball<M> ball;
  std::unordered_map<Element<M>, std::uint32_t, typename M::hasher> seen;
  ball.elements.push_back(model.identity());
  ball.lengths.push_back(0);
  ball.spheres.push_back(1);
  seen.emplace(model.identity(), 0);
  std::size_t frontier_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    std::size_t frontier_end = ball.elements.size();
    std::size_t added = 0;
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : model.generators()) {
        Element<M> h = model.multiply(ball.elements[i], s);
        if (seen.emplace(h, static_cast<std::uint32_t>(r)).second) {
          ball.elements.push_back(std::move(h));
          ball.lengths.push_back(static_cast<std::uint32_t>(r));
          ++added;
          if (ball.elements.size() > budget.max_elements) throw BudgetExceeded(r, budget.max_elements);
        }
      }
    }
    ball.spheres.push_back(added);
    frontier_begin = frontier_end;
  }
  return ball;
}

/// Word length with respect to the model's generators. Closed form where
/// available, otherwise a lazily extended BFS ball.
template <GroupModel M>
class LengthOracle {
 public:
  explicit LengthOracle(const M& model, Budget budget = {}) : model_(&model), budget_(budget) {}

  std::optional<std::size_t> length(const Element<M>& g, std::size_t cap) {
    if constexpr (ClosedFormLength<M>) {
      return model_->word_length(g, cap);
    } else {
      extend_to(cap);
      auto it = index_.find(g);
      if (it == index_.end()) return std::nullopt;
      return it->second;
    }
  }

 private:
  void extend_to(std::size_t cap) {
    if (built_ && radius_ >= cap) return;
    if (!built_) {
      frontier_.push_back(model_->identity());
      index_.emplace(model_->identity(), 0);
      built_ = true;
      radius_ = 0;
    }
    while (radius_ < cap) {
      std::vector<Element<M>> next;
      for (const auto& g : frontier_) {
        for (const auto& s : model_->generators()) {
          Element<M> h = model_->multiply(g, s);
          if (index_.emplace(h, radius_ + 1).second) next.push_back(std::move(h));
        }
      }
      ++radius_;
      frontier_ = std::move(next);
      if (index_.size() > budget_.max_elements) throw BudgetExceeded(radius_, budget_.max_elements);
    }
  }

  const M* model_;
  Budget budget_;
  bool built_ = false;
  std::size_t radius_ = 0;
  std::vector<Element<M>> frontier_;
  std::unordered_map<Element<M>, std::size_t, typename M::hasher> index_;
};

/// Convenience wrapper: exact length if at most cap, nullopt otherwise.
template <GroupModel M>
std::optional<std::size_t> word_length(const M& model, const Element<M>& g, std::size_t cap) {
  LengthOracle<M> oracle(model);
  return oracle.length(g, cap);
}

// Ball cache file layout (all integers big endian):
//   magic "CWLBALL1"
//   u64 model hash, u32 radius, u32 sphere count, u64 spheres[count], u64 element count
//   per element, sorted by encoding bytes: u32 byte length, encoding, u32 word length

inline std::filesystem::path cache_directory() {
  const char* env = std::getenv("CWL_CACHE_DIR");
  return std::filesystem::path(env && *env ? env : ".cwl-cache");
}

template <GroupModel M>
std::filesystem::path ball_cache_path(const M& model, std::size_t radius,
                                      const std::filesystem::path& dir = cache_directory()) {
  return dir / ("ball-" + hex64(model.model_hash()) + "-r" + std::to_string(radius) + ".bin");
}

template <GroupModel M>
void write_ball_cache(const M& model, const Ball<M>& ball, const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::uint32_t>> records;
  records.reserve(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) records.emplace_back(model.encode(ball.elements[i]), ball.lengths[i]);
  std::sort(records.begin(), records.end());
  std::string out = "CWLBALL1";
  append_u64(out, model.model_hash());
  append_u32(out, static_cast<std::uint32_t>(ball.radius()));
  append_u32(out, static_cast<std::uint32_t>(ball.spheres.size()));
  for (auto s : ball.spheres) append_u64(out, s);
  append_u64(out, records.size());
  for (const auto& [bytes, len] : records) {
    append_u32(out, static_cast<std::uint32_t>(bytes.size()));
    out += bytes;
    append_u32(out, len);
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error("cannot write ball cache " + path.string());
}

/// Loads a cached ball; nullopt if absent or written for a different model/radius.
template <GroupModel M>
std::optional<Ball<M>> read_ball_cache(const M& model, std::size_t radius, const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  auto need = [&](std::size_t k) {
    if (pos + k > data.size()) throw Error("truncated ball cache " + path.string());
  };
  auto u64 = [&] {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<unsigned char>(data[pos++]);
    return v;
  };
  auto u32 = [&] {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(data[pos++]);
    return v;
  };
  need(8);
  if (data.compare(0, 8, "CWLBALL1") != 0) return std::nullopt;
  pos = 8;
  if (u64() != model.model_hash()) return std::nullopt;
  if (u32() != radius) return std::nullopt;
  Ball<M> ball;
  std::uint32_t count = u32();
  for (std::uint32_t i = 0; i < count; ++i) ball.spheres.push_back(u64());
  std::uint64_t n = u64();
  std::vector<std::pair<std::uint32_t, Element<M>>> items;
  items.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t len = u32();
    need(len);
    std::string bytes = data.substr(pos, len);
    pos += len;
    items.emplace_back(u32(), model.decode(bytes));
  }
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [len, g] : items) {
    ball.lengths.push_back(len);
    ball.elements.push_back(std::move(g));
  }
  return ball;
}

/// ball_enumerate backed by the on-disk cache.
template <GroupModel M>
Ball<M> cached_ball(const M& model, std::size_t radius, const Budget& budget = {},
                    const std::filesystem::path& dir = cache_directory()) {
  auto path = ball_cache_path(model, radius, dir);
  if (auto hit = read_ball_cache(model, radius, path)) return std::move(*hit);
  Ball<M> ball = ball_enumerate(model, radius, budget);
  write_ball_cache(model, ball, path);
  return ball;
}

}  // namespace cwl
