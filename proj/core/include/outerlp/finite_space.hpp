#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "outerlp/errors.hpp"
#include "outerlp/ext_real.hpp"

namespace outerlp {

// Subsets of a finite point set (ids 0..n-1) are bitmasks.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline Mask full_mask(int n) { return n == 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

// Hard cap on exact computations; beyond this every enumeration is hopeless
// and the spec declares it out of scope.
inline constexpr int kMaxPoints = 22;
inline constexpr int kMaxGenerators = 22;

struct Generator {
  Mask set = 0;
  double sigma = 0.0;  // pre-measure value, strictly positive and finite
};

struct Generators {
  std::vector<Generator> items;
};

// Explicit outer-measure table over all 2^n subsets, indexed by mask.
struct ExplicitTable {
  std::vector<double> mu;
};

using MeasureSource = std::variant<Generators, ExplicitTable>;

// Nonnegative function on the points, extended-real valued.
struct PointFunction {
  std::vector<double> values;

  static PointFunction zero(int n) { return PointFunction{std::vector<double>(n, 0.0)}; }
};

// A finite set with strictly positive weights and an outer measure given
// either by covering generators or by an explicit validated table.
class FiniteOuterSpace {
 public:
  int size() const { return n_; }
  Mask all() const { return full_mask(n_); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int x) const { return weights_[x]; }

  bool has_generators() const { return std::holds_alternative<Generators>(source_); }
  const std::vector<Generator>& generators() const {
    return std::get<Generators>(source_).items;
  }

  // Outer measure of A. Generators: exact infimum over covering
  // subcollections; ExplicitTable: lookup. mu(empty) = 0, uncovered A = +inf.
  ExtReal outer_measure(Mask A) const;

  // Union of all generator sets (= all() for table-backed spaces).
  Mask covered() const { return covered_; }

  friend FiniteOuterSpace build_space(std::vector<double> weights, MeasureSource source);

 private:
  int n_ = 0;
  std::vector<double> weights_;
  MeasureSource source_;
  Mask covered_ = 0;
  // Full mu table over subsets, precomputed when affordable.
  std::vector<double> mu_table_;

  double measure_by_branch_and_bound(Mask A) const;
};

// Validates invariants and constructs the space. Throws NonPositiveWeight,
// AxiomViolation (tables), SpaceTooLarge.
FiniteOuterSpace build_space(std::vector<double> weights, MeasureSource source);

}  // namespace outerlp
