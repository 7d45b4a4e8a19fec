#include "outerlp/tent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace outerlp {

namespace {

// finest-cell centers
std::vector<std::array<double, 2>> base_points(const DyadicGrid& g) {
  std::vector<std::array<double, 2>> pts;
  double h = g.side(0);
  int n0 = g.n_side(0);
  if (g.d == 1) {
    pts.resize(n0);
    for (int x = 0; x < n0; ++x) pts[x] = {(x + 0.5) * h, 0.0};
  } else {
    pts.resize(std::size_t(n0) * n0);
    for (int y = 0; y < n0; ++y)
      for (int x = 0; x < n0; ++x) pts[std::size_t(y) * n0 + x] = {(x + 0.5) * h, (y + 0.5) * h};
  }
  return pts;
}

double sup_dist(const DyadicGrid& g, const std::array<double, 2>& x, int cell) {
  double lo[2];
  g.corner(cell, lo);
  double h = g.side(g.scale_of(cell));
  double dist = std::fabs(x[0] - (lo[0] + h / 2));
  if (g.d == 2) dist = std::max(dist, std::fabs(x[1] - (lo[1] + h / 2)));
  return dist;
}

double band_center(const DyadicGrid& g, int cell) { return 0.75 * g.side(g.scale_of(cell)); }

}  // namespace

ExtReal tent_norm(const DyadicGrid& g, const CellFunction& F, double p, double r) {
  if (!(p > 0.0) || !(r > 0.0)) throw InvalidExponents("p, r must be positive");
  const auto pts = base_points(g);
  const double cone_w = (std::pow(2.0, g.d) - 1.0) / g.d;  // integral of dy dt/t^{d+1}

  if (!std::isinf(p)) {
    // L^p of the cone functional A_r
    double acc = 0.0;
    const double vol0 = std::pow(g.side(0), g.d);
    for (const auto& x : pts) {
      double a;
      if (std::isinf(r)) {
        a = 0.0;
        for (int cell = 0; cell < g.total; ++cell)
          if (sup_dist(g, x, cell) < band_center(g, cell)) a = std::max(a, F.values[cell]);
      } else {
        double s = 0.0;
        for (int cell = 0; cell < g.total; ++cell)
          if (F.values[cell] > 0.0 && sup_dist(g, x, cell) < band_center(g, cell))
            s += cone_w * std::pow(F.values[cell], r);
        a = s > 0.0 ? std::pow(s, 1.0 / r) : 0.0;
      }
      acc += vol0 * std::pow(a, p);
    }
    return ExtReal(std::pow(acc, 1.0 / p));
  }

  if (std::isinf(r)) {
    // every cell sits in some large tent
    double best = 0.0;
    for (double v : F.values) best = std::max(best, v);
    return ExtReal(best);
  }
  // Carleson functional: sup over apexes (x, s)
  double best = 0.0;
  for (int js = g.j_min; js <= g.j_max + 2; ++js) {
    const double s = std::ldexp(1.0, js);
    const double ball = std::pow(2.0 * s, g.d);
    for (const auto& x : pts) {
      double acc = 0.0;
      for (int cell = 0; cell < g.total; ++cell)
        if (F.values[cell] > 0.0 && sup_dist(g, x, cell) < s - band_center(g, cell))
          acc += g.cell_mass(cell) * std::pow(F.values[cell], r);
      if (acc > 0.0) best = std::max(best, std::pow(acc / ball, 1.0 / r));
    }
  }
  return ExtReal(best);
}

std::pair<double, double> equivalence_ratio(const DyadicGrid& g, const CellFunction& F,
                                            double p, double r) {
  double t = tent_norm(g, F, p, r).value();
  auto b = outer_quasinorm(g, F, p, r);
  if (t == 0.0 && b.upper.value() == 0.0) return {1.0, 1.0};
  return {t / b.upper.value(), t / b.lower.value()};
}

CellFunction scale_map(const DyadicGrid& g, const CellFunction& F, double a) {
  CellFunction out = F;
  for (int cell = 0; cell < g.total; ++cell)
    out.values[cell] *= std::pow(g.side(g.scale_of(cell)), a);
  return out;
}

HlsResult hls_check(const DyadicGrid& g, const CellFunction& F, double p, double q, double r1,
                    double r2) {
  if (!(p > 0.0 && p < q) || !(r2 > 0.0 && r2 <= r1)) throw InvalidExponents("need 0 < p < q, 0 < r2 <= r1");
  HlsResult out;
  const double a = double(g.d) / p - double(g.d) / q;
  auto shifted = scale_map(g, F, a);
  double num = outer_quasinorm(g, shifted, q, r2).upper.value();
  double den = outer_quasinorm(g, F, p, r1).lower.value();
  out.ratio = den > 0.0 ? num / den : 0.0;

  // unit-tent atom: constant on the box over a side-1 base, normalized so the
  // T^{r1}_{r1} norm is exactly |B|^{1/r1 - 1}
  int sB = std::clamp(-g.j_min, 0, g.L);
  int box = g.id(sB, 0);
  CellFunction atom = CellFunction::zero(g);
  for (int cell = 0; cell < g.total; ++cell)
    if (g.is_ancestor_or_self(box, cell)) atom.values[cell] = 1.0;
  double base_vol = std::pow(g.side(sB), g.d);
  double tn = tent_norm(g, atom, r1, r1).value();
  if (tn > 0.0) {
    double c = std::pow(base_vol, 1.0 / r1 - 1.0) / tn;
    for (double& v : atom.values) v *= c;
    auto lifted = scale_map(g, atom, double(g.d) - double(g.d) / q);
    out.atom_bound = tent_norm(g, lifted, q, r2).value();
  }
  return out;
}

}  // namespace outerlp
