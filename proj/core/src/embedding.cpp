#include "outerlp/embedding.hpp"

#include "outerlp/tent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace outerlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_norm(double x, double y, int d) { return d == 1 ? std::fabs(x) : std::max(std::fabs(x), std::fabs(y)); }

double kernel_decay(double w, int d, double eps) { return std::pow(1.0 + w, -double(d) - eps); }

double kernel_bump(double w) { return w < 1.0 ? std::exp(-1.0 / (1.0 - w * w)) : 0.0; }

struct BaseCell {
  int index = 0;
  double value = 0.0;
  double lo[2] = {0.0, 0.0};  // lower corner
};

std::vector<BaseCell> support_cells(const DyadicGrid& g, const BaseFunction& f) {
  if (int(f.values.size()) != g.cells_at(0))
    throw UnsupportedKernel("base function does not match the finest grid layer");
  std::vector<BaseCell> cells;
  double h = g.side(0);
  int n0 = g.n_side(0);
  for (int b = 0; b < g.cells_at(0); ++b) {
    if (f.values[b] == 0.0) continue;
    BaseCell c;
    c.index = b;
    c.value = f.values[b];
    if (g.d == 1) {
      c.lo[0] = b * h;
    } else {
      c.lo[0] = (b % n0) * h;
      c.lo[1] = (b / n0) * h;
    }
    cells.push_back(c);
  }
  return cells;
}

double overlap_1d(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
}

// midpoint quadrature of t^{-d} f(z) phi((y - z) / t) over one base cell with
// m points per axis
double quad_cell(const DyadicGrid& g, const BaseCell& c, const double* y, double t, int m,
                 Kernel kernel, double eps) {
  double h = g.side(0);
  double step = h / m;
  double acc = 0.0;
  if (g.d == 1) {
    for (int i = 0; i < m; ++i) {
      double z = c.lo[0] + (i + 0.5) * step;
      double w = std::fabs(y[0] - z) / t;
      acc += kernel == Kernel::kDecay ? kernel_decay(w, 1, eps) : kernel_bump(w);
    }
    return c.value * step * acc / t;
  }
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) {
      double zx = c.lo[0] + (ix + 0.5) * step;
      double zy = c.lo[1] + (iy + 0.5) * step;
      double w = sup_norm(y[0] - zx, y[1] - zy, 2) / t;
      acc += kernel == Kernel::kDecay ? kernel_decay(w, 2, eps) : kernel_bump(w);
    }
  }
  return c.value * step * step * acc / (t * t);
}

// nearest sup-norm distance from y to the cube of a base cell
double cell_distance(const DyadicGrid& g, const BaseCell& c, const double* y) {
  double h = g.side(0);
  double best = 0.0;
  for (int ax = 0; ax < g.d; ++ax) {
    double lo = c.lo[ax], hi = c.lo[ax] + h;
    double dist = y[ax] < lo ? lo - y[ax] : (y[ax] > hi ? y[ax] - hi : 0.0);
    best = std::max(best, dist);
  }
  return best;
}

}  // namespace

CellFunction embed(const DyadicGrid& g, const BaseFunction& f, Kernel kernel, double eps,
                   double* quad_error) {
  if (kernel != Kernel::kIndicatorBox && kernel != Kernel::kDecay &&
      kernel != Kernel::kSmoothBump)
    throw UnsupportedKernel("unknown kernel");
  if (kernel != Kernel::kSmoothBump)
    for (double v : f.values)
      if (v < 0.0) throw UnsupportedKernel("signed input requires the smooth bump kernel");

  const auto cells = support_cells(g, f);
  const double h = g.side(0);
  const int m = g.d == 1 ? 4 : 2;  // refined pass doubles per axis
  CellFunction F = CellFunction::zero(g);
  double worst = 0.0;

  for (int id = 0; id < g.total; ++id) {
    int s = g.scale_of(id);
    double t = g.side(s);
    double lo[2];
    g.corner(id, lo);
    double y[2] = {lo[0] + t / 2, g.d == 2 ? lo[1] + t / 2 : 0.0};

    if (kernel == Kernel::kIndicatorBox) {
      // exact overlap of the cube |y - z| < t with each constant piece
      double acc = 0.0;
      for (const auto& c : cells) {
        double ov = overlap_1d(y[0] - t, y[0] + t, c.lo[0], c.lo[0] + h);
        if (g.d == 2) ov *= overlap_1d(y[1] - t, y[1] + t, c.lo[1], c.lo[1] + h);
        acc += c.value * ov;
      }
      F.values[id] = acc / std::pow(t, g.d);
      continue;
    }

    double coarse = 0.0, fine = 0.0;
    for (const auto& c : cells) {
      if (kernel == Kernel::kSmoothBump && cell_distance(g, c, y) >= t) continue;
      coarse += quad_cell(g, c, y, t, m, kernel, eps);
      fine += quad_cell(g, c, y, t, 2 * m, kernel, eps);
    }
    worst = std::max(worst, std::fabs(fine - coarse));
    F.values[id] = kernel == Kernel::kSmoothBump ? std::fabs(fine) : fine;
  }
  if (quad_error) *quad_error = worst;
  return F;
}

CellFunction embed_sup(const DyadicGrid& g, const BaseFunction& f, double eps,
                       double* quad_error) {
  BaseFunction abs_f = f;
  for (double& v : abs_f.values) v = std::fabs(v);
  return embed(g, abs_f, Kernel::kDecay, eps, quad_error);
}

BaseFunction maximal_function(const DyadicGrid& g, const BaseFunction& f) {
  if (int(f.values.size()) != g.cells_at(0))
    throw UnsupportedKernel("base function does not match the finest grid layer");
  BaseFunction out = BaseFunction::zero(g);
  const double h = g.side(0);
  const int n0 = g.n_side(0);
  auto axis_lo = [&](int b, int ax) {
    return g.d == 1 ? b * h : (ax == 0 ? (b % n0) * h : (b / n0) * h);
  };
  for (int b = 0; b < g.cells_at(0); ++b) {
    double x[2] = {axis_lo(b, 0) + h / 2, g.d == 2 ? axis_lo(b, 1) + h / 2 : 0.0};
    double best = 0.0;
    for (int js = g.j_min; js <= g.j_max + 2; ++js) {
      double rho = std::ldexp(1.0, js);
      double mass = 0.0;
      for (int c = 0; c < g.cells_at(0); ++c) {
        if (f.values[c] == 0.0) continue;
        double ov = overlap_1d(x[0] - rho, x[0] + rho, axis_lo(c, 0), axis_lo(c, 0) + h);
        if (g.d == 2) ov *= overlap_1d(x[1] - rho, x[1] + rho, axis_lo(c, 1), axis_lo(c, 1) + h);
        mass += std::fabs(f.values[c]) * ov;
      }
      best = std::max(best, mass / std::pow(2.0 * rho, g.d));
    }
    out.values[b] = best;
  }
  return out;
}

double base_lp_norm(const DyadicGrid& g, const BaseFunction& f, double p) {
  if (!(p > 0.0)) throw InvalidExponents("p must be positive");
  if (std::isinf(p)) {
    double best = 0.0;
    for (double v : f.values) best = std::max(best, std::fabs(v));
    return best;
  }
  double vol = std::pow(g.side(0), g.d);
  double acc = 0.0;
  for (double v : f.values)
    if (v != 0.0) acc += vol * std::pow(std::fabs(v), p);
  return std::pow(acc, 1.0 / p);
}

namespace {

// certified bracket for sup_lambda lambda mu(l^r > lambda)^{1/q} over a dyadic
// lambda sweep; the dyadic gap costs at most a factor 2 on the upper endpoint
std::pair<double, double> weak_norm_bracket(const DyadicGrid& g, const CellFunction& G,
                                            double q, double r) {
  double sup = sup_size(g, G, r).value();
  if (sup <= 0.0) return {0.0, 0.0};
  if (std::isinf(q)) {
    auto b = outer_quasinorm(g, G, q, r);
    return {b.lower.value(), b.upper.value()};
  }
  int k_hi = int(std::ceil(std::log2(sup)));
  double lo = 0.0, up = 0.0;
  for (int k = k_hi; k > k_hi - 48; --k) {
    double lambda = std::ldexp(1.0, k);
    auto b = super_level_bracket(g, G, r, lambda);
    if (b.lower.is_finite()) lo = std::max(lo, lambda * std::pow(b.lower.value(), 1.0 / q));
    if (b.upper.is_finite()) up = std::max(up, lambda * std::pow(b.upper.value(), 1.0 / q));
  }
  return {lo, 2.0 * up};
}

TypeRecord make_record(const DyadicGrid& g, const std::string& label, const BaseFunction& f,
                       double p, double q, double r) {
  TypeRecord rec;
  rec.label = label;
  rec.input_norm = base_lp_norm(g, f, p);
  auto F = embed(g, f, Kernel::kIndicatorBox);
  auto G = scale_map(g, F, double(g.d) / p - double(g.d) / q);
  auto strong = outer_quasinorm(g, G, q, r);
  rec.strong_lower = strong.lower.value();
  rec.strong_upper = strong.upper.value();
  auto weak = weak_norm_bracket(g, G, q, r);
  rec.weak_lower = weak.first;
  rec.weak_upper = weak.second;
  rec.strong_ratio = rec.input_norm > 0.0 ? rec.strong_upper / rec.input_norm : 0.0;
  rec.weak_ratio = rec.input_norm > 0.0 ? rec.weak_upper / rec.input_norm : 0.0;
  return rec;
}

}  // namespace

std::vector<TypeRecord> type_estimate_report(const DyadicGrid& g, double p, double q,
                                             double r) {
  if (!(p > 0.0) || !(q > 0.0) || !(r > 0.0))
    throw InvalidExponents("p, q, r must be positive");
  std::vector<TypeRecord> out;

  // corner indicator boxes at every scale
  const double h = g.side(0);
  const int n0 = g.n_side(0);
  for (int s = 0; s <= g.L; ++s) {
    BaseFunction f = BaseFunction::zero(g);
    int w = 1 << s;  // box side in finest cells
    for (int b = 0; b < g.cells_at(0); ++b) {
      int ix = g.d == 1 ? b : b % n0;
      int iy = g.d == 1 ? 0 : b / n0;
      if (ix < w && iy < w) f.values[b] = 1.0;
    }
    out.push_back(make_record(g, "box " + std::to_string(s), f, p, q, r));
  }

  // tent-shaped bump centred in the domain
  {
    BaseFunction f = BaseFunction::zero(g);
    double c = std::ldexp(1.0, g.j_max) / 2;
    double R = std::ldexp(1.0, g.j_max) / 4;
    for (int b = 0; b < g.cells_at(0); ++b) {
      double x = (g.d == 1 ? b : b % n0) * h + h / 2;
      double v = std::max(0.0, 1.0 - std::fabs(x - c) / R);
      if (g.d == 2) v *= std::max(0.0, 1.0 - std::fabs((b / n0) * h + h / 2 - c) / R);
      f.values[b] = v;
    }
    out.push_back(make_record(g, "bump", f, p, q, r));
  }

  // seeded sparse dyadic sums
  std::uint64_t state = 0x2545F4914F6CDD1Dull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int seed = 0; seed < 3; ++seed) {
    BaseFunction f = BaseFunction::zero(g);
    for (int b = 0; b < g.cells_at(0); ++b)
      if (next() % 4 == 0) f.values[b] = double((next() % 8) + 1) / 4.0;
    out.push_back(make_record(g, "sparse " + std::to_string(seed), f, p, q, r));
  }
  return out;
}

DivergenceReport counterexample_divergence(double q, double r, int H_exp) {
  if (!(q >= 1.0) || !(r > 0.0)) throw InvalidExponents("need q >= 1, r > 0");
  if (H_exp < 1 || H_exp > 14) throw GridTooLarge("height exponent must lie in [1, 14]");
  auto g = build_grid(1, 0, H_exp);

  BaseFunction f = BaseFunction::zero(g);
  f.values[0] = 1.0;  // the corner unit cube
  auto F = embed(g, f, Kernel::kIndicatorBox);
  auto G = scale_map(g, F, 1.0 - 1.0 / q);

  DivergenceReport rep;
  for (int s = 0; s + 1 <= g.L && s <= 6; ++s) {
    DivergenceRecord rec;
    rec.u = std::ldexp(1.0, s);
    int box = g.id(s + 1, 0);
    std::vector<char> below(g.total, 0);  // mask heights <= u
    for (int id = 0; id < g.offset[s + 1]; ++id) below[id] = 1;
    rec.size_on_box = size_box_excluding(g, G, below, box, r).value();
    rec.lambda = rec.size_on_box / 2;
    rec.mu_lower = super_level_bracket(g, G, r, rec.lambda).lower.value();
    rec.chain_ok = rec.mu_lower >= rec.u * (1.0 - 1e-9);
    rep.records.push_back(rec);
  }
  auto norm = outer_quasinorm(g, G, q, r);
  rep.truncated_norm_lower = norm.lower.value();
  rep.truncated_norm_upper = norm.upper.value();

  // weak-type variant: the size over the whole-box tent blows up as the grid
  // refines; the scale factor is neutral for finite r and t^{-d/q} for r = inf
  for (int m_ref = 1; m_ref <= 4; ++m_ref) {
    auto gw = build_grid(1, -m_ref, 0);
    BaseFunction ones{std::vector<double>(gw.cells_at(0), 1.0)};
    auto Fw = embed(gw, ones, Kernel::kIndicatorBox);
    if (std::isinf(r)) Fw = scale_map(gw, Fw, -1.0 / q);
    rep.unbounded_size_sweep.push_back(size_box(gw, Fw, gw.root(), r).value());
  }
  return rep;
}

AtomRecord h1_atom_check(const DyadicGrid& g, int j) {
  int sB = j - g.j_min;
  if (sB < 1 || sB > g.L)
    throw AtomViolation("atom scale must admit a half split inside the grid");
  const double inv_vol = std::pow(std::ldexp(1.0, -j), g.d);
  const double h = g.side(0);
  const int n0 = g.n_side(0);
  const int w = 1 << sB;  // atom side in finest cells

  BaseFunction f = BaseFunction::zero(g);
  for (int b = 0; b < g.cells_at(0); ++b) {
    int ix = g.d == 1 ? b : b % n0;
    int iy = g.d == 1 ? 0 : b / n0;
    if (ix >= w || iy >= w) continue;
    f.values[b] = ix < w / 2 ? inv_vol : -inv_vol;
  }

  // moment and size screening
  double mean = 0.0, peak = 0.0;
  for (double v : f.values) {
    mean += v * std::pow(h, g.d);
    peak = std::max(peak, std::fabs(v));
  }
  if (std::fabs(mean) > 1e-12 * inv_vol || peak > inv_vol * (1.0 + 1e-12))
    throw AtomViolation("constructed atom fails the moment or size condition");

  auto F = embed(g, f, Kernel::kSmoothBump);
  AtomRecord rec;
  auto norm = outer_quasinorm(g, F, 1.0, kInf);
  rec.norm_lower = norm.lower.value();
  rec.norm_upper = norm.upper.value();
  rec.lambda_max = sup_size(g, F, kInf).value();
  if (rec.lambda_max <= 0.0) return rec;

  // level-set decay fit over a dyadic lambda sweep, excluding the saturated
  // tail where the super level measure has hit the cover of the full support
  int k_top = int(std::floor(std::log2(rec.lambda_max)));
  double saturation =
      super_level_bracket(g, F, kInf, rec.lambda_max * std::ldexp(1.0, -40)).lower.value();
  std::vector<std::pair<double, double>> pts;  // (log lambda, log mu)
  for (int k = k_top - 1; k > k_top - 12; --k) {
    double lambda = std::ldexp(1.0, k);
    double mu = super_level_bracket(g, F, kInf, lambda).lower.value();
    if (mu <= 0.0) continue;
    if (mu >= saturation * (1.0 - 1e-9)) break;
    pts.emplace_back(std::log(lambda), std::log(mu));
  }
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) sx += x, sy += y, sxx += x * x, sxy += x * y;
    double n = double(pts.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rec.fit_exponent = -slope;
  }
  return rec;
}

}  // namespace outerlp
