#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwl/core/error.hpp"
#include "cwl/core/numeric.hpp"

namespace cwl {

/// A freely reduced word, stored as packed signed bytes: +i is the i-th
/// generator and -i its inverse (1-based).
struct Word {
  std::string letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  int at(std::size_t i) const { return static_cast<signed char>(letters[i]); }
  int back() const { return static_cast<signed char>(letters.back()); }
  void push(int x) { letters.push_back(static_cast<char>(static_cast<signed char>(x))); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters <=> b.letters; }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return std::hash<std::string>{}(w.letters); }
};

/// Free group F_r on generators a, b, c, ... with S = {a, a^-1, b, b^-1, ...}.
class FreeGroup {
 public:
  using element_type = Word;
  using hasher = WordHash;

  explicit FreeGroup(int rank) : rank_(rank) {
    if (rank < 1) throw EmptyAlphabet();
    if (rank > 26) throw Error("free group rank above 26 is not supported");
    for (int i = 1; i <= rank; ++i) {
      for (int s : {i, -i}) {
        Word w;
        w.push(s);
        gens_.push_back(w);
        labels_.push_back(letter_name(s));
      }
    }
  }

  int rank() const noexcept { return rank_; }
  Word identity() const { return {}; }
  const std::vector<Word>& generators() const noexcept { return gens_; }
  const std::vector<std::string>& generator_labels() const noexcept { return labels_; }

  /// Reduces an arbitrary letter sequence.
  Word reduce(const Word& w) const {
    check_letters(w);
    Word out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int x = w.at(i);
      if (!out.empty() && out.back() == -x) {
        out.letters.pop_back();
      } else {
        out.push(x);
      }
    }
    return out;
  }

  Word multiply(const Word& a, const Word& b) const {
    check(a);
    check(b);
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a.at(a.size() - 1 - k) == -b.at(k)) ++k;
    Word out;
    out.letters.reserve(a.size() + b.size() - 2 * k);
    out.letters.append(a.letters, 0, a.size() - k);
    out.letters.append(b.letters, k, std::string::npos);
    return out;
  }

  Word inverse(const Word& a) const {
    check(a);
    Word out;
    out.letters.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.letters[a.size() - 1 - i] = static_cast<char>(static_cast<signed char>(-a.at(i)));
    }
    return out;
  }

  /// Verifies that the word belongs to this model: letters in range and reduced.
  void check(const Word& w) const {
    check_letters(w);
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w.at(i) == -w.at(i - 1)) throw MixedModel("word is not freely reduced");
    }
  }

  std::size_t word_length(const Word& w) const noexcept { return w.size(); }

  std::optional<std::size_t> word_length(const Word& w, std::size_t cap) const {
    check(w);
    if (w.size() > cap) return std::nullopt;
    return w.size();
  }

  std::string encode(const Word& w) const { return w.letters; }
  Word decode(const std::string& bytes) const {
    Word w{bytes};
    check(w);
    return w;
  }

  std::uint64_t model_hash() const {
    std::string tag = "free:" + std::to_string(rank_);
    return fnv1a(tag);
  }

  std::string describe() const { return "FreeGroup(rank=" + std::to_string(rank_) + ")"; }

  static std::string letter_name(int x) {
    std::string s(1, static_cast<char>('a' + std::abs(x) - 1));
    if (x < 0) s += "^-1";
    return s;
  }

  /// Formats a word as e.g. "ab^-1a"; the identity prints as "1".
  std::string format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
      int x = w.at(i);
      std::size_t j = i;
      while (j < w.size() && w.at(j) == x) ++j;
      std::size_t run = j - i;
      out += static_cast<char>('a' + std::abs(x) - 1);
      if (x < 0 || run > 1) {
        long e = static_cast<long>(run) * (x < 0 ? -1 : 1);
        if (e != 1) out += "^" + std::to_string(e);
      }
      i = j;
    }
    return out;
  }

  /// Parses word syntax: word := "1" | factor+ ; factor := letter ("^" ["-"] digits)? ;
  /// letter := 'a'..'z'. Uppercase letters denote inverses. Result is reduced.
  Word parse(std::string_view text) const {
    Word raw;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (text.substr(i) == "1" || i == text.size()) return {};
    while (i < text.size()) {
      skip_ws();
      if (i == text.size()) break;
      char c = text[i];
      int letter = 0;
      if (c >= 'a' && c <= 'z') {
        letter = c - 'a' + 1;
      } else if (c >= 'A' && c <= 'Z') {
        letter = -(c - 'A' + 1);
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "' in word '" +
                         std::string(text) + "'");
      }
      if (std::abs(letter) > rank_) {
        throw MixedModel("letter '" + std::string(1, c) + "' outside rank " + std::to_string(rank_));
      }
      ++i;
      long exponent = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
          neg = text[i] == '-';
          ++i;
        }
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError("missing exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(text.substr(start, i - start)));
        if (neg) exponent = -exponent;
      }
      int x = exponent < 0 ? -letter : letter;
      for (long k = 0; k < std::labs(exponent); ++k) raw.push(x);
    }
    return reduce(raw);
  }

 private:
  void check_letters(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      int x = w.at(i);
      if (x == 0 || std::abs(x) > rank_) {
        throw MixedModel("letter " + std::to_string(x) + " outside rank " + std::to_string(rank_));
      }
    }
  }

  int rank_;
  std::vector<Word> gens_;
  std::vector<std::string> labels_;
};

}  // namespace cwl
