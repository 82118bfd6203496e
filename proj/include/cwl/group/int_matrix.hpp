#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"

namespace cwl {

/// Dense square matrix over Z with arbitrary-precision entries, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  explicit IntMatrix(int size) : n(size), a(static_cast<std::size_t>(size * size), BigInt(0)) {}

  static IntMatrix identity(int size) {
    IntMatrix m(size);
    for (int i = 0; i < size; ++i) m(i, i) = 1;
    return m;
  }

  /// I + r * E_{ij}, 0-based indices.
  static IntMatrix elementary(int size, int i, int j, const BigInt& r) {
    IntMatrix m = identity(size);
    m(i, j) += r;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n; ++i) {
      if (rows[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(m.n)) {
        throw Error("matrix rows must form a square");
      }
      for (int j = 0; j < m.n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  BigInt& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const BigInt& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

  std::vector<BigInt> column(int j) const {
    std::vector<BigInt> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
    return c;
  }

  std::vector<BigInt> row(int i) const {
    return {a.begin() + i * n, a.begin() + (i + 1) * n};
  }

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.n != y.n) throw MixedModel("matrix size mismatch");
  IntMatrix out(x.n);
  for (int i = 0; i < x.n; ++i) {
    for (int k = 0; k < x.n; ++k) {
      const BigInt& xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < x.n; ++j) {
        if (y(k, j) != 0) out(i, j) += xik * y(k, j);
      }
    }
  }
  return out;
}

inline IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix out = x;
  for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] -= y.a[k];
  return out;
}

inline std::vector<BigInt> operator*(const IntMatrix& x, const std::vector<BigInt>& v) {
  std::vector<BigInt> out(static_cast<std::size_t>(x.n), BigInt(0));
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) out[static_cast<std::size_t>(i)] += x(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

inline IntMatrix transpose(const IntMatrix& x) {
  IntMatrix out(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) out(j, i) = x(i, j);
  return out;
}

inline IntMatrix power(const IntMatrix& x, long e);

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& m) {
  int n = m.n;
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Inverse of a determinant-one matrix via the adjugate.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  int n = m.n;
  BigInt det = determinant(m);
  if (det != 1 && det != -1) throw NonUnimodular("determinant " + det.str());
  IntMatrix adj(n);
  if (n == 1) {
    adj(0, 0) = 1;
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        IntMatrix minor(n - 1);
        for (int r = 0, mr = 0; r < n; ++r) {
          if (r == i) continue;
          for (int c = 0, mc = 0; c < n; ++c) {
            if (c == j) continue;
            minor(mr, mc++) = m(r, c);
          }
          ++mr;
        }
        BigInt cof = determinant(minor);
        if ((i + j) % 2) cof = -cof;
        adj(j, i) = cof;
      }
    }
  }
  if (det == -1)
    for (auto& x : adj.a) x = -x;
  return adj;
}

inline IntMatrix power(const IntMatrix& x, long e) {
  IntMatrix base = e < 0 ? inverse_unimodular(x) : x;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  IntMatrix out = IntMatrix::identity(x.n);
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

/// Characteristic polynomial det(X I - m), coefficients from X^n down to X^0
/// (Faddeev-LeVerrier with exact rational division).
inline std::vector<BigInt> characteristic_polynomial(const IntMatrix& m) {
  int n = m.n;
  std::vector<BigInt> c(static_cast<std::size_t>(n + 1), BigInt(0));
  c[0] = 1;
  IntMatrix prev(n);  // M_{k-1}, starts at zero
  for (int k = 1; k <= n; ++k) {
    IntMatrix cur = m * prev;
    for (int i = 0; i < n; ++i) cur(i, i) += c[static_cast<std::size_t>(k - 1)];
    IntMatrix am = m * cur;
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(k)] = -tr / k;
    prev = cur;
  }
  return c;
}

inline std::string format_matrix(const IntMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.n; ++i) {
    if (i) out += ",";
    out += "[";
    for (int j = 0; j < m.n; ++j) {
      if (j) out += ",";
      out += m(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace cwl
