#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace outerlp {

struct NonPositiveWeight : std::runtime_error {
  explicit NonPositiveWeight(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when validating an explicit outer-measure table. Carries the pair of
// witnessing sets (as bitmasks over point ids).
struct AxiomViolation : std::runtime_error {
  enum class Kind { EmptySet, Monotonicity, Subadditivity };

  AxiomViolation(Kind kind, std::uint32_t a, std::uint32_t b, const std::string& what)
      : std::runtime_error(what), kind(kind), witness_a(a), witness_b(b) {}

  Kind kind;
  std::uint32_t witness_a;
  std::uint32_t witness_b;
};

struct GeneratorLimitExceeded : std::runtime_error {
  explicit GeneratorLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SpaceTooLarge : std::runtime_error {
  explicit SpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NotInLinf : std::runtime_error {
  explicit NotInLinf(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedExponents : std::runtime_error {
  explicit UnsupportedExponents(const std::string& what) : std::runtime_error(what) {}
};

struct DepthTooLarge : std::runtime_error {
  explicit DepthTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooLarge : std::runtime_error {
  explicit GridTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidExponents : std::runtime_error {
  explicit InvalidExponents(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedKernel : std::runtime_error {
  explicit UnsupportedKernel(const std::string& what) : std::runtime_error(what) {}
};

struct AtomViolation : std::runtime_error {
  explicit AtomViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigParse : std::runtime_error {
  explicit ConfigParse(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace outerlp
