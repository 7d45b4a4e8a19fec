#pragma once

#include "outerlp/quasinorms.hpp"

namespace outerlp {

// The non-uniformity family: points are the dyadic intervals J inside [0,1]
// with |J| >= 2^{-m}, indexed in level order (root = 0). The measure is
// generated by the 2^m chains E_I = {J : I subset J} over minimal intervals
// I, each with sigma = 1, and the weight is 1. The test function is
// f_m(J) = 2^m |J|.
struct ChainSpace {
  int m = 0;

  int num_points() const { return (1 << (m + 1)) - 1; }
  int num_generators() const { return 1 << m; }

  // level-order index of the level-i interval with offset t (0 <= t < 2^i)
  static int point_id(int i, int t) { return (1 << i) - 1 + t; }

  // f_m in level order: value 2^{m-i} on each level-i interval
  PointFunction f_m() const;
  // f_I = indicator of the chain over the j-th minimal interval
  PointFunction f_I(int j) const;

  // Materializes the generic finite space. Only possible within the bitmask
  // budget (m <= 3); used to validate the chain-symmetry evaluator.
  FiniteOuterSpace to_finite_space() const;
};

// Throws DepthTooLarge outside 1 <= m <= 14.
ChainSpace counterexample_space(int m);

struct CounterexampleRatios {
  ExtReal lhs;   // ||f_m||_{L^1(l^r)}, exact
  ExtReal rhs;   // sum_I ||f_I||_{L^1(l^r)} = 2^m (m+1)^{1/r}
  double ratio;  // lhs / rhs, unbounded in m: quasi-norm vs norm gap
};

// Exact evaluation by chain symmetry: the super level measure at lambda is
// 2^{j-1} where j is the least level whose tail size drops below lambda.
CounterexampleRatios counterexample_ratios(int m, double r);

}  // namespace outerlp
