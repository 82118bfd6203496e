#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cwl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MixedModel : public Error {
 public:
  explicit MixedModel(const std::string& what) : Error("MixedModel: " + what) {}
};

class NonUnimodular : public Error {
 public:
  explicit NonUnimodular(const std::string& what) : Error("NonUnimodular: " + what) {}
};

/// Raised when an enumeration would exceed the configured element budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t radius, std::size_t limit)
      : Error("BudgetExceeded: element budget " + std::to_string(limit) +
              " tripped at radius " + std::to_string(radius)),
        radius_(radius) {}
  std::size_t radius() const noexcept { return radius_; }

 private:
  std::size_t radius_;
};

class UnsupportedFamily : public Error {
 public:
  explicit UnsupportedFamily(const std::string& what) : Error("UnsupportedFamily: " + what) {}
};

class FallbackTooSlow : public Error {
 public:
  explicit FallbackTooSlow(const std::string& what) : Error("FallbackTooSlow: " + what) {}
};

class UnknownKey : public Error {
 public:
  explicit UnknownKey(const std::string& what) : Error("UnknownKey: " + what) {}
};

class InvalidOracle : public Error {
 public:
  explicit InvalidOracle(const std::string& what) : Error("InvalidOracle: " + what) {}
};

class EmptyAlphabet : public Error {
 public:
  EmptyAlphabet() : Error("EmptyAlphabet: free group rank must be at least 1") {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error("InsufficientData: " + what) {}
};

class ZeroDenominator : public Error {
 public:
  explicit ZeroDenominator(const std::string& what) : Error("ZeroDenominator: " + what) {}
};

class NotPrimitive : public Error {
 public:
  explicit NotPrimitive(const std::string& what) : Error("NotPrimitive: " + what) {}
};

class NotUnipotent : public Error {
 public:
  explicit NotUnipotent(const std::string& what) : Error("NotUnipotent: " + what) {}
};

class FixedSpaceTrivial : public Error {
 public:
  explicit FixedSpaceTrivial(const std::string& what) : Error("FixedSpaceTrivial: " + what) {}
};

class ConflictingEvidence : public Error {
 public:
  explicit ConflictingEvidence(const std::string& what) : Error("ConflictingEvidence: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("ConfigError: " + what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError: " + what) {}
};

}  // namespace cwl
