#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <iterator>
#include <string>
#include <type_traits>
#include <vector>

namespace cwl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::mpq_rational;

/// Value modes for distributions: exact rationals or float64.
template <class V>
inline constexpr bool is_exact_v = std::is_same_v<V, Rational>;

template <class V>
concept MassValue = std::same_as<V, double> || std::same_as<V, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

/// Natural log of a positive rational, accurate for values far outside the double range.
inline long double log_of(const Rational& v) {
  auto num = boost::multiprecision::numerator(v);
  auto den = boost::multiprecision::denominator(v);
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, num.backend().data());
  double md = mpz_get_d_2exp(&ed, den.backend().data());
  return std::log(static_cast<long double>(mn)) - std::log(static_cast<long double>(md)) +
         static_cast<long double>(en - ed) * std::log(2.0L);
}
inline long double log_of(double v) { return std::log(static_cast<long double>(v)); }

/// Kahan-compensated accumulator.
template <class T = double>
struct KahanSum {
  T sum{0};
  T comp{0};
  void add(T x) {
    T y = x - comp;
    T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  T value() const { return sum; }
};

inline BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Floor division for signed big integers.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

/// Residue of a modulo |m| in [0, |m|).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt mm = m < 0 ? BigInt(-m) : m;
  BigInt r = a % mm;
  if (r < 0) r += mm;
  return r;
}

/// Canonical byte encoding of a signed big integer: sign byte, u16 length, magnitude (big endian).
inline void append_bigint(std::string& out, const BigInt& v) {
  std::vector<unsigned char> mag;
  if (v != 0) {
    BigInt a = v < 0 ? BigInt(-v) : v;
    boost::multiprecision::export_bits(a, std::back_inserter(mag), 8);
  }
  out.push_back(v < 0 ? '\x01' : '\x00');
  out.push_back(static_cast<char>((mag.size() >> 8) & 0xff));
  out.push_back(static_cast<char>(mag.size() & 0xff));
  out.append(mag.begin(), mag.end());
}

inline BigInt read_bigint(const std::string& in, std::size_t& pos) {
  bool neg = in.at(pos) != 0;
  std::size_t len = (static_cast<unsigned char>(in.at(pos + 1)) << 8) |
                    static_cast<unsigned char>(in.at(pos + 2));
  pos += 3;
  BigInt v = 0;
  if (len > 0) {
    boost::multiprecision::import_bits(v, in.begin() + static_cast<long>(pos),
                                       in.begin() + static_cast<long>(pos + len), 8);
  }
  pos += len;
  return neg ? BigInt(-v) : v;
}

inline void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void append_u64(std::string& out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

/// FNV-1a over bytes.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string to_hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

inline std::string hex64(std::uint64_t v) {
  std::string raw;
  append_u64(raw, v);
  return to_hex(raw);
}

/// Parses "p/q", "p" or a decimal-free integer string into an exact rational.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(num) / Rational(den);
}

inline Rational rational_pow(Rational base, unsigned e) {
  Rational r = 1;
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

}  // namespace cwl
