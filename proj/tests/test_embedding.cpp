#include <cmath>
#include <vector>

#include "doctest.h"
#include "outerlp/embedding.hpp"
#include "outerlp/tent.hpp"
#include "test_util.hpp"

using namespace outerlp;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("indicator kernel on a full-support constant gives the total kernel mass") {
  for (int d : {1, 2}) {
    auto g = build_grid(d, 0, 4);
    BaseFunction f{std::vector<double>(g.cells_at(0), 1.0)};
    auto F = embed(g, f, Kernel::kIndicatorBox);
    // interior cells: the window [y - t, y + t]^d sits inside the base
    for (int id = 0; id < g.total; ++id) {
      int s = g.scale_of(id);
      double t = g.side(s);
      double lo[2];
      g.corner(id, lo);
      bool interior = lo[0] - t / 2 >= 0.0 && lo[0] + 1.5 * t <= g.side(g.L);
      if (d == 2) interior = interior && lo[1] - t / 2 >= 0.0 && lo[1] + 1.5 * t <= g.side(g.L);
      if (interior)
        CHECK(F.values[id] == doctest::Approx(std::pow(2.0, d)).epsilon(1e-12));
      CHECK(F.values[id] <= std::pow(2.0, d) + 1e-12);
    }
  }
}

TEST_CASE("indicator kernel on the corner unit cube equals the inverse height on the corner tower") {
  auto g = build_grid(1, 0, 4);
  BaseFunction f = BaseFunction::zero(g);
  f.values[0] = 1.0;
  auto F = embed(g, f, Kernel::kIndicatorBox);
  for (int s = 0; s <= g.L; ++s) {
    double t = g.side(s);
    double expected = std::min(1.5 * t, 1.0) / t;
    CHECK(F.values[g.id(s, 0)] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("indicator and decay kernels reject signed input") {
  auto g = build_grid(1, 0, 2);
  BaseFunction f = BaseFunction::zero(g);
  f.values[1] = -1.0;
  CHECK_THROWS_AS(embed(g, f, Kernel::kIndicatorBox), UnsupportedKernel);
  CHECK_THROWS_AS(embed(g, f, Kernel::kDecay), UnsupportedKernel);
  CHECK_NOTHROW(embed(g, f, Kernel::kSmoothBump));
}

TEST_CASE("decay kernel is dominated by the centred maximal function") {
  testutil::Rng rng(0x90adu);
  auto g = build_grid(1, -1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    BaseFunction f = BaseFunction::zero(g);
    for (double& v : f.values)
      if (rng.below(2) == 0) v = rng.dyadic();
    auto F = embed(g, f, Kernel::kDecay, 1.0);
    auto M = maximal_function(g, f);
    double h = g.side(0);
    for (int id = 0; id < g.total; ++id) {
      double lo[2];
      g.corner(id, lo);
      double y = lo[0] + g.side(g.scale_of(id)) / 2;
      int b = std::min(g.cells_at(0) - 1, int(y / h));
      CHECK(F.values[id] <= 64.0 * M.values[b] + 1e-12);
    }
  }
}

TEST_CASE("supremal kernel: zero input, point-mass profile, Young bound") {
  auto g = build_grid(1, -2, 3);
  auto zero = BaseFunction::zero(g);
  auto Fz = embed_sup(g, zero, 1.0);
  for (double v : Fz.values) CHECK(v == 0.0);

  // near point mass of unit integral: top-of-grid value approaches t^{-d}
  BaseFunction spike = BaseFunction::zero(g);
  int mid = g.cells_at(0) / 2;
  spike.values[mid] = 1.0 / g.side(0);
  auto F = embed_sup(g, spike, 1.0);
  double t_top = g.side(g.L);
  CHECK(F.values[g.root()] == doctest::Approx(1.0 / t_top).epsilon(0.25));

  // F(y, t) <= t^{-1/2} ||f||_2 ||phi||_2 with ||phi||_2^2 = 2 / (1 + 2 eps)
  testutil::Rng rng(0x10c4u);
  for (int trial = 0; trial < 10; ++trial) {
    BaseFunction f = BaseFunction::zero(g);
    for (double& v : f.values)
      if (rng.below(2) == 0) v = rng.dyadic();
    auto Fr = embed_sup(g, f, 1.0);
    double bound = base_lp_norm(g, f, 2.0) * std::sqrt(2.0 / 3.0);
    for (int id = 0; id < g.total; ++id) {
      double t = g.side(g.scale_of(id));
      CHECK(Fr.values[id] * std::sqrt(t) <= bound * 1.05 + 1e-12);
    }
  }
}

TEST_CASE("maximal function of a constant is that constant away from the boundary") {
  auto g = build_grid(1, 0, 3);
  BaseFunction f{std::vector<double>(g.cells_at(0), 2.5)};
  auto M = maximal_function(g, f);
  double h = g.side(0), rho = g.side(0), domain = g.side(g.L);
  for (int b = 0; b < g.cells_at(0); ++b) {
    double x = (b + 0.5) * h;
    CHECK(M.values[b] <= 2.5 + 1e-12);
    if (x - rho >= 0.0 && x + rho <= domain)
      CHECK(M.values[b] == doctest::Approx(2.5).epsilon(1e-12));
    else
      CHECK(M.values[b] >= 1.25);  // boundary balls lose at most half their mass
  }
}

TEST_CASE("base norms: counting check and sup") {
  auto g = build_grid(1, -1, 2);  // 16 cells of width 1/2
  BaseFunction f = BaseFunction::zero(g);
  f.values[0] = 3.0;
  f.values[5] = -4.0;
  CHECK(base_lp_norm(g, f, 1.0) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(base_lp_norm(g, f, 2.0) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
  CHECK(base_lp_norm(g, f, kInf) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(base_lp_norm(g, f, 0.0), InvalidExponents);
}

TEST_CASE("type records: finite ratios in the positive range, growth at the endpoint") {
  auto g = build_grid(1, 0, 4);
  for (auto [p, q, r] : std::vector<std::array<double, 3>>{
           {2.0, 4.0, 2.0}, {2.0, kInf, kInf}, {1.0, kInf, 1.0}}) {
    auto recs = type_estimate_report(g, p, q, r);
    CHECK(recs.size() >= 7);
    for (const auto& rec : recs) {
      CHECK(rec.input_norm > 0.0);
      CHECK(std::isfinite(rec.strong_ratio));
      CHECK(rec.strong_ratio > 0.0);
      CHECK(rec.strong_lower <= rec.strong_upper + 1e-12);
      CHECK(rec.weak_lower <= rec.weak_upper + 1e-12);
    }
  }
  // (1, 1, inf): the unit-box strong ratio grows with the grid height while
  // the weak ratio stays in a fixed band
  std::vector<double> strong, weak;
  for (int J = 2; J <= 6; ++J) {
    auto gh = build_grid(1, 0, J);
    auto recs = type_estimate_report(gh, 1.0, 1.0, kInf);
    strong.push_back(recs[0].strong_ratio);
    weak.push_back(recs[0].weak_ratio);
  }
  for (std::size_t i = 1; i < strong.size(); ++i) CHECK(strong[i] > strong[i - 1]);
  for (double w : weak) {
    CHECK(w >= weak[0] / 3.0);
    CHECK(w <= weak[0] * 3.0);
  }
}

TEST_CASE("divergence chain: masked sizes, certified lower bounds, norm growth") {
  SUBCASE("exact masked size at r = inf") {
    auto rep = counterexample_divergence(2.0, kInf, 7);
    CHECK(rep.records.size() == 7);
    for (const auto& rec : rep.records) {
      // masked l^inf size on the box over [0, 2u) is exactly (2u)^{-1/q}
      CHECK(rec.size_on_box ==
            doctest::Approx(std::pow(2.0 * rec.u, -0.5)).epsilon(1e-12));
      CHECK(rec.chain_ok);
      CHECK(rec.mu_lower >= rec.u);
    }
  }
  SUBCASE("finite r chain and logarithmic growth") {
    auto rep4 = counterexample_divergence(2.0, 2.0, 4);
    auto rep8 = counterexample_divergence(2.0, 2.0, 8);
    for (const auto& rec : rep8.records) CHECK(rec.chain_ok);
    CHECK(rep8.truncated_norm_lower > rep4.truncated_norm_lower * 1.05);
    CHECK(rep8.truncated_norm_lower <= rep8.truncated_norm_upper + 1e-12);
    // weak-type variant sizes grow without bound under refinement
    for (std::size_t i = 1; i < rep8.unbounded_size_sweep.size(); ++i)
      CHECK(rep8.unbounded_size_sweep[i] > rep8.unbounded_size_sweep[i - 1]);
  }
  SUBCASE("trivial truncation") {
    auto rep = counterexample_divergence(1.0, 2.0, 1);
    CHECK(rep.records.size() == 1);
  }
  SUBCASE("screening") {
    CHECK_THROWS_AS(counterexample_divergence(0.5, 2.0, 4), InvalidExponents);
    CHECK_THROWS_AS(counterexample_divergence(2.0, 2.0, 15), GridTooLarge);
  }
}

TEST_CASE("mean-zero atom: validity, vanishing threshold, decay shape") {
  auto g = build_grid(1, -3, 6);
  CHECK_THROWS_AS(h1_atom_check(g, -3), AtomViolation);  // no half split available
  auto rec = h1_atom_check(g, 0);
  CHECK(rec.lambda_max > 0.0);
  CHECK(rec.norm_lower > 0.0);
  CHECK(rec.norm_lower <= rec.norm_upper + 1e-12);
  CHECK(std::isfinite(rec.norm_upper));
  // d = 1 level-set decay mu(> lambda) ~ lambda^{-1/2}; loose unit-test window
  CHECK(rec.fit_exponent > 0.2);
  CHECK(rec.fit_exponent < 0.9);
}
