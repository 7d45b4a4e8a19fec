#include "outerlp/chain_space.hpp"

#include <cmath>
#include <vector>

namespace outerlp {

PointFunction ChainSpace::f_m() const {
  PointFunction f = PointFunction::zero(num_points());
  for (int i = 0; i <= m; ++i)
    for (int t = 0; t < (1 << i); ++t) f.values[point_id(i, t)] = std::ldexp(1.0, m - i);
  return f;
}

PointFunction ChainSpace::f_I(int j) const {
  PointFunction f = PointFunction::zero(num_points());
  for (int i = 0; i <= m; ++i) f.values[point_id(i, j >> (m - i))] = 1.0;
  return f;
}

FiniteOuterSpace ChainSpace::to_finite_space() const {
  if (num_points() > kMaxPoints)
    throw SpaceTooLarge("chain space exceeds the exact bitmask budget beyond m = 3");
  Generators gens;
  for (int j = 0; j < num_generators(); ++j) {
    Mask chain = 0;
    for (int i = 0; i <= m; ++i) chain |= Mask(1) << point_id(i, j >> (m - i));
    gens.items.push_back({chain, 1.0});
  }
  return build_space(std::vector<double>(num_points(), 1.0), std::move(gens));
}

ChainSpace counterexample_space(int m) {
  if (m < 1 || m > 14) throw DepthTooLarge("chain depth must be in [1, 14]");
  return ChainSpace{m};
}

CounterexampleRatios counterexample_ratios(int m, double r) {
  if (m < 1 || m > 14) throw DepthTooLarge("chain depth must be in [1, 14]");
  if (!(r > 1.0)) throw InvalidExponents("the counterexample needs 1 < r <= inf");
  // T(j): the l^r mass a chain retains when its top j intervals are removed.
  // Buying one chain per level-(j-1) subtree is optimal, so the super level
  // measure is the step function lambda in [T(j)^{1/r}, T(j-1)^{1/r}) ->
  // 2^{j-1}, and the L^1 layer cake telescopes over j.
  std::vector<double> T(m + 2, 0.0);
  for (int j = m; j >= 0; --j) {
    double level_value = std::ldexp(1.0, m - j);
    T[j] = std::isinf(r) ? level_value : T[j + 1] + std::pow(level_value, r);
  }
  auto root = [r](double t) { return std::isinf(r) ? t : std::pow(t, 1.0 / r); };
  double lhs = 0.0;
  for (int j = 1; j <= m + 1; ++j) lhs += std::ldexp(1.0, j - 1) * (root(T[j - 1]) - root(T[j]));
  double rhs = std::ldexp(1.0, m) * (std::isinf(r) ? 1.0 : std::pow(m + 1.0, 1.0 / r));
  return {ExtReal(lhs), ExtReal(rhs), lhs / rhs};
}

}  // namespace outerlp
