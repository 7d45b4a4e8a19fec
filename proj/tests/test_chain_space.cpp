#include <cmath>

#include "doctest.h"
#include "outerlp/chain_space.hpp"
#include "outerlp/decomposition.hpp"

using namespace outerlp;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("chain space counts") {
  auto c1 = counterexample_space(1);
  CHECK(c1.num_points() == 3);
  CHECK(c1.num_generators() == 2);
  auto c3 = counterexample_space(3);
  CHECK(c3.num_points() == 15);
  CHECK(c3.num_generators() == 8);
  CHECK_THROWS_AS(counterexample_space(0), DepthTooLarge);
  CHECK_THROWS_AS(counterexample_space(15), DepthTooLarge);
}

TEST_CASE("f_2 takes the values 2^m |J| in level order") {
  auto c = counterexample_space(2);
  auto f = c.f_m();
  const double want[] = {4, 2, 2, 1, 1, 1, 1};
  REQUIRE(f.values.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(f.values[i] == want[i]);
}

TEST_CASE("each chain has m+1 elements and measure 1") {
  auto c = counterexample_space(3);
  auto s = c.to_finite_space();
  for (const auto& g : s.generators()) {
    CHECK(popcount(g.set) == 4);
    CHECK(s.outer_measure(g.set).value() == 1.0);
  }
  CHECK(s.outer_measure(s.all()).value() == 8.0);  // must buy every chain
}

TEST_CASE("chain-symmetry evaluator matches brute force at small depth") {
  for (int m = 1; m <= 3; ++m) {
    auto c = counterexample_space(m);
    auto s = c.to_finite_space();
    auto f = c.f_m();
    for (double r : {1.5, 2.0, 4.0, kInf}) {
      auto got = counterexample_ratios(m, r);
      double brute = lp_quasinorm(s, f, 1.0, r).value();
      CHECK(approx_eq(got.lhs.value(), brute));
      // rhs is the sum over chains of ||f_I||_{L^1(l^r)}
      double rhs = 0.0;
      for (int j = 0; j < c.num_generators(); ++j)
        rhs += lp_quasinorm(s, c.f_I(j), 1.0, r).value();
      CHECK(approx_eq(got.rhs.value(), rhs));
    }
  }
}

TEST_CASE("paper bounds: lhs >= 2^m (m+1)/2 and rhs = 2^m (m+1)^{1/r}") {
  for (int m = 1; m <= 14; ++m) {
    for (double r : {1.5, 2.0, 3.0, kInf}) {
      auto got = counterexample_ratios(m, r);
      CHECK(got.lhs.value() >= std::ldexp(1.0, m) * (m + 1) / 2.0 - 1e-9);
      double want_rhs =
          std::ldexp(1.0, m) * (std::isinf(r) ? 1.0 : std::pow(m + 1.0, 1.0 / r));
      CHECK(approx_eq(got.rhs.value(), want_rhs));
    }
  }
  // m=2, r=2 from the construction: rhs = 4 sqrt(3)
  CHECK(approx_eq(counterexample_ratios(2, 2.0).rhs.value(), 4.0 * std::sqrt(3.0)));
  CHECK(counterexample_ratios(2, 2.0).lhs.value() >= 6.0 - 1e-12);
}

TEST_CASE("the norm gap ratio grows in depth (non-uniformity)") {
  double prev = 0.0;
  for (int m = 2; m <= 12; ++m) {
    double ratio = counterexample_ratios(m, 2.0).ratio;
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 1.5);  // by m = 12 the gap is far beyond any fixed constant
}

TEST_CASE("duality gap blows up on the chain space at p=1, r=2") {
  // pairing against the best candidate cannot certify the L^1(l^2) norm:
  // the gap grows like (m+1)^{1/2}/2
  auto c = counterexample_space(3);
  auto s = c.to_finite_space();
  auto gap = duality_gap(s, c.f_m(), 1.0, 2.0);
  CHECK(gap.ratio >= std::sqrt(4.0) / 2.0 - 1e-9);
  // and the exact evaluator pushes the same bound to m = 6: ratio >= sqrt(7)/2
  auto r6 = counterexample_ratios(6, 2.0);
  CHECK(r6.ratio >= std::sqrt(7.0) / 2.0 - 1e-9);
}
