#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"

namespace cwl {

struct IntVec {
  std::vector<std::int64_t> v;
  friend bool operator==(const IntVec&, const IntVec&) = default;
  friend auto operator<=>(const IntVec&, const IntVec&) = default;
};

struct IntVecHash {
  std::size_t operator()(const IntVec& x) const noexcept {
    std::uint64_t h = 0x12345;
    for (auto c : x.v) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

/// Z^d with the standard generators +-e_i.
class FreeAbelian {
 public:
  using element_type = IntVec;
  using hasher = IntVecHash;

  explicit FreeAbelian(int dim) : dim_(dim) {
    if (dim < 1) throw Error("free abelian dimension must be at least 1");
    for (int i = 0; i < dim; ++i) {
      for (int s : {1, -1}) {
        IntVec e{std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0)};
        e.v[static_cast<std::size_t>(i)] = s;
        gens_.push_back(e);
        labels_.push_back((s > 0 ? "+e" : "-e") + std::to_string(i + 1));
      }
    }
  }

  int dim() const noexcept { return dim_; }
  IntVec identity() const { return IntVec{std::vector<std::int64_t>(static_cast<std::size_t>(dim_), 0)}; }
  const std::vector<IntVec>& generators() const noexcept { return gens_; }
  const std::vector<std::string>& generator_labels() const noexcept { return labels_; }

  IntVec multiply(const IntVec& a, const IntVec& b) const {
    check(a);
    check(b);
    IntVec out = a;
    for (std::size_t i = 0; i < out.v.size(); ++i) {
      if (__builtin_add_overflow(out.v[i], b.v[i], &out.v[i])) throw Error("Z^d coordinate overflow");
    }
    return out;
  }

  IntVec inverse(const IntVec& a) const {
    check(a);
    IntVec out = a;
    for (auto& c : out.v) c = -c;
    return out;
  }

  void check(const IntVec& a) const {
    if (a.v.size() != static_cast<std::size_t>(dim_)) {
      throw MixedModel("vector of dimension " + std::to_string(a.v.size()) + " in Z^" +
                       std::to_string(dim_));
    }
  }

  /// l1 norm, which is the word length for the standard generators.
  std::optional<std::size_t> word_length(const IntVec& a, std::size_t cap) const {
    check(a);
    std::size_t total = 0;
    for (auto c : a.v) total += static_cast<std::size_t>(std::llabs(c));
    if (total > cap) return std::nullopt;
    return total;
  }

  std::string encode(const IntVec& a) const {
    std::string out;
    for (auto c : a.v) append_u64(out, static_cast<std::uint64_t>(c) ^ (1ULL << 63));
    return out;
  }

  IntVec decode(const std::string& bytes) const {
    if (bytes.size() != 8 * static_cast<std::size_t>(dim_)) throw MixedModel("bad Z^d encoding");
    IntVec out;
    for (int i = 0; i < dim_; ++i) {
      std::uint64_t u = 0;
      for (int k = 0; k < 8; ++k) u = (u << 8) | static_cast<unsigned char>(bytes[static_cast<std::size_t>(8 * i + k)]);
      out.v.push_back(static_cast<std::int64_t>(u ^ (1ULL << 63)));
    }
    return out;
  }

  std::uint64_t model_hash() const { return fnv1a("abelian:" + std::to_string(dim_)); }
  std::string describe() const { return "FreeAbelian(d=" + std::to_string(dim_) + ")"; }

  std::string format(const IntVec& a) const {
    std::string out = "(";
    for (std::size_t i = 0; i < a.v.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(a.v[i]);
    }
    return out + ")";
  }

 private:
  int dim_;
  std::vector<IntVec> gens_;
  std::vector<std::string> labels_;
};

}  // namespace cwl
