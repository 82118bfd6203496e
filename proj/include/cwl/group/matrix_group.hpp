#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"
#include "cwl/group/int_matrix.hpp"

namespace cwl {

struct IntMatrixHash {
  std::size_t operator()(const IntMatrix& m) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(m.n);
    for (const auto& x : m.a) {
      // Low limb and sign are enough to spread entries; collisions fall back to ==.
      std::uint64_t low = 0;
      if (x != 0) {
        const auto& limbs = x.backend();
        low = static_cast<std::uint64_t>(*limbs.limbs()) ^ (x.sign() < 0 ? 0xa5a5a5a5ULL : 0);
      }
      h = splitmix64(h ^ low);
    }
    return static_cast<std::size_t>(h);
  }
};

/// A finitely generated subgroup of SL_n(Z) given by a symmetric list of
/// determinant-one generators.
class MatrixGroupZ {
 public:
  using element_type = IntMatrix;
  using hasher = IntMatrixHash;

  MatrixGroupZ(int n, std::vector<IntMatrix> generators, std::vector<std::string> labels = {},
               std::string name = "")
      : n_(n), gens_(std::move(generators)), labels_(std::move(labels)), name_(std::move(name)) {
    if (n < 2) throw Error("matrix group size must be at least 2");
    if (labels_.empty()) {
      for (std::size_t i = 0; i < gens_.size(); ++i) labels_.push_back("s" + std::to_string(i + 1));
    }
    if (labels_.size() != gens_.size()) throw Error("one label per generator required");
    for (const auto& g : gens_) check(g);
    for (const auto& g : gens_) {
      IntMatrix inv = inverse_unimodular(g);
      bool found = false;
      for (const auto& h : gens_) found = found || h == inv;
      if (!found) throw Error("generating list is not closed under inversion");
    }
  }

  /// Builds {g1, g1^-1, g2, g2^-1, ...} from the given matrices.
  static MatrixGroupZ symmetric(int n, const std::vector<IntMatrix>& gens,
                                const std::vector<std::string>& names = {}, std::string name = "") {
    std::vector<IntMatrix> all;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string base = i < names.size() ? names[i] : "s" + std::to_string(i + 1);
      all.push_back(gens[i]);
      labels.push_back(base);
      IntMatrix inv = inverse_unimodular(gens[i]);
      if (inv != gens[i]) {
        all.push_back(inv);
        labels.push_back(base + "^-1");
      }
    }
    return MatrixGroupZ(n, std::move(all), std::move(labels), std::move(name));
  }

  /// SL_n(Z) with the elementary generators u_ij(+-1), i != j.
  static MatrixGroupZ sl_elementary(int n) {
    std::vector<IntMatrix> gens;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) {
          gens.push_back(IntMatrix::elementary(n, i, j, 1));
          names.push_back("u" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    return symmetric(n, gens, names, "SL" + std::to_string(n) + "(Z) elementary");
  }

  /// H_3(Z) generated by x = I+E12 and y = I+E23.
  static MatrixGroupZ heisenberg() {
    return symmetric(3, {IntMatrix::elementary(3, 0, 1, 1), IntMatrix::elementary(3, 1, 2, 1)}, {"x", "y"},
                     "Heisenberg H3(Z)");
  }

  int size() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  IntMatrix identity() const { return IntMatrix::identity(n_); }
  const std::vector<IntMatrix>& generators() const noexcept { return gens_; }
  const std::vector<std::string>& generator_labels() const noexcept { return labels_; }

  IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) const {
    if (a.n != n_ || b.n != n_) throw MixedModel("matrix of size " + std::to_string(a.n == n_ ? b.n : a.n) +
                                                 " in SL_" + std::to_string(n_));
    return a * b;
  }

  IntMatrix inverse(const IntMatrix& a) const {
    check_size(a);
    return inverse_unimodular(a);
  }

  void check(const IntMatrix& a) const {
    check_size(a);
    BigInt det = determinant(a);
    if (det != 1) throw NonUnimodular("determinant " + det.str() + " for " + format_matrix(a));
  }

  std::string encode(const IntMatrix& a) const {
    std::string out;
    for (const auto& x : a.a) append_bigint(out, x);
    return out;
  }

  IntMatrix decode(const std::string& bytes) const {
    IntMatrix m(n_);
    std::size_t pos = 0;
    for (auto& x : m.a) x = read_bigint(bytes, pos);
    if (pos != bytes.size()) throw MixedModel("bad matrix encoding");
    return m;
  }

  std::uint64_t model_hash() const {
    std::string tag = "matrix:" + std::to_string(n_);
    for (const auto& g : gens_) tag += encode(g);
    return fnv1a(tag);
  }

  std::string describe() const {
    std::string out = "MatrixGroupZ(n=" + std::to_string(n_) + ", |S|=" + std::to_string(gens_.size());
    if (!name_.empty()) out += ", " + name_;
    return out + ")";
  }

  std::string format(const IntMatrix& a) const { return format_matrix(a); }

 private:
  void check_size(const IntMatrix& a) const {
    if (a.n != n_) throw MixedModel("matrix of size " + std::to_string(a.n) + " in SL_" + std::to_string(n_));
  }

  int n_;
  std::vector<IntMatrix> gens_;
  std::vector<std::string> labels_;
  std::string name_;
};

}  // namespace cwl
