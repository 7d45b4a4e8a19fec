#include "outerlp/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace outerlp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1.0 + 1e-12;  // float noise allowance in comparisons
}  // namespace

int DyadicGrid::scale_of(int id) const {
  int s = 0;
  while (s + 1 <= L && offset[s + 1] <= id) ++s;
  return s;
}

int DyadicGrid::parent(int id) const {
  int s = scale_of(id);
  int pos = id - offset[s];
  if (d == 1) return offset[s + 1] + (pos >> 1);
  int n = n_side(s);
  int ix = pos % n, iy = pos / n;
  return offset[s + 1] + (iy >> 1) * (n >> 1) + (ix >> 1);
}

int DyadicGrid::child(int id, int i) const {
  int s = scale_of(id);
  int pos = id - offset[s];
  if (d == 1) return offset[s - 1] + (pos << 1) + i;
  int n = n_side(s);
  int ix = pos % n, iy = pos / n;
  int nc = n << 1;
  return offset[s - 1] + (2 * iy + (i >> 1)) * nc + 2 * ix + (i & 1);
}

bool DyadicGrid::is_ancestor_or_self(int anc, int node) const {
  int sa = scale_of(anc), sn = scale_of(node);
  if (sa < sn) return false;
  int pa = anc - offset[sa], pn = node - offset[sn];
  int shift = sa - sn;
  if (d == 1) return (pn >> shift) == pa;
  int n = n_side(sn);
  int ix = pn % n, iy = pn / n;
  int na = n_side(sa);
  return (iy >> shift) * na + (ix >> shift) == pa;
}

void DyadicGrid::corner(int id, double* lo) const {
  int s = scale_of(id);
  int pos = id - offset[s];
  double h = side(s);
  if (d == 1) {
    lo[0] = pos * h;
  } else {
    int n = n_side(s);
    lo[0] = (pos % n) * h;
    lo[1] = (pos / n) * h;
  }
}

DyadicGrid build_grid(int d, int j_min, int j_max) {
  if (d != 1 && d != 2) throw GridTooLarge("dimension must be 1 or 2");
  if (j_min > j_max) throw GridTooLarge("j_min must not exceed j_max");
  DyadicGrid g;
  g.d = d;
  g.j_min = j_min;
  g.j_max = j_max;
  g.L = j_max - j_min;
  g.offset.resize(g.L + 2, 0);
  long long total = 0;
  for (int s = 0; s <= g.L; ++s) {
    g.offset[s] = int(total);
    long long side = 1LL << (g.L - s);
    total += d == 1 ? side : side * side;
    if (total > 10'000'000) throw GridTooLarge("more than 10^7 cells");
  }
  g.offset[g.L + 1] = int(total);
  g.total = int(total);
  return g;
}

namespace {

// Bottom-up subtree sums of mass * F^r (finite r).
std::vector<double> subtree_mass(const DyadicGrid& g, const CellFunction& F, double r,
                                 const std::vector<char>* removed) {
  std::vector<double> M(g.total, 0.0);
  for (int id = 0; id < g.total; ++id) {
    if ((!removed || !(*removed)[id]) && F.values[id] > 0.0)
      M[id] = g.cell_mass(id) * std::pow(F.values[id], r);
    if (g.scale_of(id) > 0)
      for (int i = 0; i < g.kids(); ++i) M[id] += M[g.child(id, i)];
  }
  return M;
}

double size_from_mass(const DyadicGrid& g, const std::vector<double>& M, int box, double r) {
  return M[box] > 0.0 ? std::pow(M[box] / g.sigma(box), 1.0 / r) : 0.0;
}

}  // namespace

ExtReal size_box(const DyadicGrid& g, const CellFunction& F, int box, double r) {
  return size_box_excluding(g, F, std::vector<char>(g.total, 0), box, r);
}

ExtReal size_box_excluding(const DyadicGrid& g, const CellFunction& F,
                           const std::vector<char>& removed, int box, double r) {
  if (std::isinf(r)) {
    // max over surviving cells in the subtree
    double best = 0.0;
    std::vector<int> stack{box};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (!removed[id]) best = std::max(best, F.values[id]);
      if (g.scale_of(id) > 0)
        for (int i = 0; i < g.kids(); ++i) stack.push_back(g.child(id, i));
    }
    return ExtReal(best);
  }
  double mass = 0.0;
  std::vector<int> stack{box};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!removed[id] && F.values[id] > 0.0)
      mass += g.cell_mass(id) * std::pow(F.values[id], r);
    if (g.scale_of(id) > 0)
      for (int i = 0; i < g.kids(); ++i) stack.push_back(g.child(id, i));
  }
  return ExtReal(mass > 0.0 ? std::pow(mass / g.sigma(box), 1.0 / r) : 0.0);
}

ExtReal sup_size(const DyadicGrid& g, const CellFunction& F, double r) {
  if (std::isinf(r)) {
    double best = 0.0;
    for (double v : F.values) best = std::max(best, v);
    return ExtReal(best);
  }
  auto M = subtree_mass(g, F, r, nullptr);
  double best = 0.0;
  for (int id = 0; id < g.total; ++id) best = std::max(best, size_from_mass(g, M, id, r));
  return ExtReal(best);
}

namespace {

// Shared machinery for the greedy run and its verification replay.
struct GreedyState {
  const DyadicGrid& g;
  const CellFunction& F;
  double r;
  std::vector<char> removed;
  std::vector<double> M;          // masked subtree sums (finite r)
  std::vector<char> base_cover;   // finest positions under selected bases

  GreedyState(const DyadicGrid& g, const CellFunction& F, double r)
      : g(g), F(F), r(r), removed(g.total, 0), base_cover(g.cells_at(0), 0) {
    if (!std::isinf(r)) M = subtree_mass(g, F, r, nullptr);
  }

  double masked_size(int box) const {
    if (std::isinf(r)) return removed[box] ? 0.0 : F.values[box];
    return size_from_mass(g, M, box, r);
  }

  double masked_sup() const {
    double best = 0.0;
    for (int id = 0; id < g.total; ++id) best = std::max(best, masked_size(id));
    return best;
  }

  void remove_subtree(int box) {
    double drop = 0.0;
    std::vector<int> stack{box};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (!removed[id]) {
        removed[id] = 1;
        if (!std::isinf(r) && F.values[id] > 0.0)
          drop += g.cell_mass(id) * std::pow(F.values[id], r);
      }
      if (g.scale_of(id) > 0)
        for (int i = 0; i < g.kids(); ++i) stack.push_back(g.child(id, i));
    }
    if (std::isinf(r)) return;
    for (int id = box;; id = g.parent(id)) {
      M[id] -= drop;
      if (M[id] < 0.0) M[id] = 0.0;  // float dust
      if (g.scale_of(id) == g.L) break;
    }
    // exact zero inside the subtree
    std::vector<int> stack2{box};
    while (!stack2.empty()) {
      int id = stack2.back();
      stack2.pop_back();
      M[id] = 0.0;
      if (g.scale_of(id) > 0)
        for (int i = 0; i < g.kids(); ++i) stack2.push_back(g.child(id, i));
    }
  }

  void mark_base(int box) { mark_base_into(base_cover, box); }

  void mark_base_into(std::vector<char>& cover, int box) const {
    int s = g.scale_of(box);
    int pos = box - g.offset[s];
    if (g.d == 1) {
      for (int x = pos << s; x < (pos + 1) << s; ++x) cover[x] = 1;
    } else {
      int n = g.n_side(s), n0 = g.n_side(0);
      int ix = pos % n, iy = pos / n;
      for (int y = iy << s; y < (iy + 1) << s; ++y)
        for (int x = ix << s; x < (ix + 1) << s; ++x) cover[y * n0 + x] = 1;
    }
  }

  // covered finest-cell counts per node, from the current base_cover
  std::vector<std::int64_t> coverage() const {
    std::vector<std::int64_t> cov(g.total, 0);
    for (int p = 0; p < g.cells_at(0); ++p) cov[g.offset[0] + p] = base_cover[p];
    for (int id = g.cells_at(0); id < g.total; ++id)
      for (int i = 0; i < g.kids(); ++i) cov[id] += cov[g.child(id, i)];
    return cov;
  }

  // maximal boxes whose base is at least half covered by selected bases
  std::vector<int> doubling_boxes() const {
    auto cov = coverage();
    std::vector<int> out;
    std::vector<int> stack{g.root()};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (2 * cov[id] >= g.units(id)) {
        if (cov[id] > 0) out.push_back(id);
        continue;  // maximal: do not descend
      }
      if (g.scale_of(id) > 0)
        for (int i = 0; i < g.kids(); ++i) stack.push_back(g.child(id, i));
    }
    return out;
  }

  // sigma-maximal violating box at level 2^k, lexicographic tie-break;
  // -1 when none. For r = inf a box violates through its own top cell.
  int find_violator(double level) const {
    for (int s = g.L; s >= 0; --s)
      for (int pos = 0; pos < g.cells_at(s); ++pos) {
        int id = g.id(s, pos);
        if (masked_size(id) > level * kSlack) return id;
      }
    return -1;
  }
};

}  // namespace

DyadicDecomposition greedy_decompose_dyadic(const DyadicGrid& g, const CellFunction& F,
                                            double r) {
  if (!(r > 0.0)) throw InvalidExponents("r must be in (0, inf]");
  DyadicDecomposition dec;
  double sup = sup_size(g, F, r).value();
  if (sup <= 0.0) return dec;
  int k_max = int(std::ceil(std::log2(sup)));
  if (std::ldexp(1.0, k_max) < sup) ++k_max;
  dec.k_max = k_max;

  GreedyState st(g, F, r);
  int k = k_max;
  while (true) {
    --k;
    const double level = std::ldexp(1.0, k);
    // remove boxes already half covered by the bases selected above
    auto dbl = st.doubling_boxes();
    dec.doubling[k] = dbl;
    for (int q : dbl) st.remove_subtree(q);
    int n = 0;
    std::vector<int> picked;
    while (true) {
      int box = st.find_violator(level);
      if (box < 0) break;
      dec.selected.push_back({k, ++n, box});
      picked.push_back(box);
      st.remove_subtree(box);
    }
    for (int box : picked) st.mark_base(box);
    dec.k_min = k;
    if (st.masked_sup() <= 0.0) break;
  }
  return dec;
}

namespace {

// finest positions covered by the base of `box`, counted against `cover`
std::int64_t covered_units(const DyadicGrid& g, const std::vector<char>& cover, int box) {
  int s = g.scale_of(box);
  int pos = box - g.offset[s];
  std::int64_t c = 0;
  if (g.d == 1) {
    for (int x = pos << s; x < (pos + 1) << s; ++x) c += cover[x];
  } else {
    int n = g.n_side(s), n0 = g.n_side(0);
    int ix = pos % n, iy = pos / n;
    for (int y = iy << s; y < (iy + 1) << s; ++y)
      for (int x = ix << s; x < (ix + 1) << s; ++x) c += cover[y * n0 + x];
  }
  return c;
}

}  // namespace

DyadicReport verify_dyadic_decomposition(const DyadicGrid& g, const CellFunction& F, double r,
                                         const DyadicDecomposition& dec) {
  DyadicReport rep;
  if (dec.selected.empty() && dec.doubling.empty()) return rep;

  // replay in chronological order, checking the per-step strict inequality
  GreedyState st(g, F, r);
  std::vector<char> chron_cover(g.cells_at(0), 0);  // bases in selection order
  std::size_t cursor = 0;
  for (int k = dec.k_max - 1; k >= dec.k_min; --k) {
    const double level = std::ldexp(1.0, k);
    auto it = dec.doubling.find(k);
    if (it != dec.doubling.end()) {
      for (int q : it->second) {
        // a recorded doubling box really is at least half covered
        if (2 * covered_units(g, st.base_cover, q) < g.units(q))
          rep.selection_exceeds_level = false;
        st.remove_subtree(q);
      }
    }
    double level_sigma = 0.0;
    while (cursor < dec.selected.size() && dec.selected[cursor].k == k) {
      int box = dec.selected[cursor].box;
      if (!(st.masked_size(box) > level)) rep.selection_exceeds_level = false;
      // sparseness: more than half of the base is free of earlier bases
      std::int64_t total = g.units(box);
      std::int64_t free_units = total - covered_units(g, chron_cover, box);
      rep.min_sparse_fraction =
          std::min(rep.min_sparse_fraction, double(free_units) / double(total));
      if (!(2 * free_units > total)) rep.sparse_ok = false;
      st.remove_subtree(box);
      level_sigma += g.sigma(box);
      st.mark_base_into(chron_cover, box);
      ++cursor;
    }
    for (const auto& sel : dec.selected)
      if (sel.k == k) st.mark_base(sel.box);
    if (!(st.masked_sup() <= level * kSlack)) rep.stopping_condition = false;
    if (level_sigma > 0.0) {
      double denom = super_level_bracket(g, F, r, level / 2.0).lower.value();
      rep.C_emp = std::max(rep.C_emp, denom > 0.0 ? level_sigma / denom : kInf);
    }
  }

  // Carleson: selected sigma-units inside any box at most twice the box
  std::vector<std::int64_t> sel_units(g.total, 0);
  for (const auto& sel : dec.selected) sel_units[sel.box] += g.units(sel.box);
  for (int id = 0; id < g.total; ++id)
    if (g.scale_of(id) > 0)
      for (int i = 0; i < g.kids(); ++i) sel_units[id] += sel_units[g.child(id, i)];
  for (int id = 0; id < g.total; ++id) {
    double c = double(sel_units[id]) / double(g.units(id));
    rep.carleson_constant = std::max(rep.carleson_constant, c);
    if (sel_units[id] > 2 * g.units(id)) rep.carleson_ok = false;
  }
  return rep;
}

namespace {

// Exact minimal box-cover cost (in finest units) of the strict level set
// {F > lambda}: a surviving top cell forces its whole box.
std::int64_t cover_cost_units(const DyadicGrid& g, const CellFunction& F, double lambda,
                              int node) {
  if (F.values[node] > lambda) return g.units(node);
  if (g.scale_of(node) == 0) return 0;
  std::int64_t c = 0;
  for (int i = 0; i < g.kids(); ++i) c += cover_cost_units(g, F, lambda, g.child(node, i));
  return c;
}

// Pareto sweep for finite r: h[c] = least retained subtree mass using
// quantized purchase cost <= c, +inf when some box constraint inside the
// subtree cannot be met. Purchase cost of a box is units/Q rounded down
// (lower endpoint) or up (upper endpoint).
struct ParetoDP {
  const DyadicGrid& g;
  const CellFunction& F;
  double lr;  // lambda^r
  double r;
  std::int64_t Q;
  bool round_up;

  std::int64_t qcost(int node) const {
    std::int64_t u = g.units(node);
    return round_up ? (u + Q - 1) / Q : u / Q;
  }

  std::vector<double> run(int node) const {
    const double top =
        F.values[node] > 0.0 ? g.cell_mass(node) * std::pow(F.values[node], r) : 0.0;
    const std::int64_t cap = qcost(node);
    std::vector<double> h;
    if (g.scale_of(node) == 0) {
      h.assign(std::size_t(cap) + 1, kInf);
      h[0] = top;
    } else {
      std::vector<double> rem{0.0};
      for (int i = 0; i < g.kids(); ++i) {
        auto hc = run(g.child(node, i));
        std::size_t len = std::min<std::size_t>(std::size_t(cap) + 1, rem.size() + hc.size() - 1);
        std::vector<double> nxt(len, kInf);
        for (std::size_t a = 0; a < rem.size(); ++a) {
          if (rem[a] == kInf) continue;
          for (std::size_t b = 0; b < hc.size() && a + b < len; ++b)
            nxt[a + b] = std::min(nxt[a + b], rem[a] + hc[b]);
        }
        rem.swap(nxt);
      }
      h.assign(std::size_t(cap) + 1, kInf);
      for (std::size_t c = 0; c < h.size() && c < rem.size(); ++c)
        if (rem[c] < kInf) h[c] = rem[c] + top;
    }
    // the box constraint at this node
    const double budget = lr * g.sigma(node) * kSlack;
    for (double& v : h)
      if (v > budget) v = kInf;
    // buying the whole box settles everything below
    h[std::size_t(cap)] = 0.0;
    for (std::size_t c = 1; c < h.size(); ++c) h[c] = std::min(h[c], h[c - 1]);
    return h;
  }
};

double finest_sigma(const DyadicGrid& g) { return std::pow(g.side(0), g.d); }

}  // namespace

Bracket super_level_bracket(const DyadicGrid& g, const CellFunction& F, double r,
                            double lambda) {
  if (!(lambda > 0.0)) throw InvalidExponents("lambda must be positive");
  if (std::isinf(r)) {
    double v = double(cover_cost_units(g, F, lambda, g.root())) * finest_sigma(g);
    return {ExtReal(v), ExtReal(v)};
  }
  // pick the coarsest exact-enough quantum within the work budget
  std::int64_t Q = 1;
  auto work = [&](std::int64_t q) {
    double w = 0.0;
    for (int s = 0; s <= g.L; ++s) {
      double len = double(std::int64_t(1) << (g.d * s)) / double(q);
      if (len < 1.0) len = 1.0;
      w += double(g.cells_at(s)) * len * len;
    }
    return w;
  };
  while (work(Q) > 2e8) Q *= (std::int64_t(1) << g.d);

  auto solve = [&](bool up) -> double {
    ParetoDP dp{g, F, std::pow(lambda, r), r, Q, up};
    auto h = dp.run(g.root());
    for (std::size_t c = 0; c < h.size(); ++c)
      if (h[c] < kInf) return double(c) * double(Q) * finest_sigma(g);
    return kInf;
  };
  if (Q == 1) {
    double v = solve(false);
    return {ExtReal(v), ExtReal(v)};
  }
  return {ExtReal(solve(false)), ExtReal(solve(true))};
}

Bracket outer_quasinorm(const DyadicGrid& g, const CellFunction& F, double p, double r) {
  if (!(p > 0.0) || !(r > 0.0)) throw InvalidExponents("p, r must be positive");
  if (std::isinf(p)) {
    auto v = sup_size(g, F, r);
    return {v, v};
  }
  double sup = sup_size(g, F, r).value();
  if (sup <= 0.0) return {ExtReal(0.0), ExtReal(0.0)};
  // measure of the support cover: the flat tail value of the super level
  double s0 = double(cover_cost_units(g, F, 0.0, g.root())) * finest_sigma(g);
  int k_hi = int(std::ceil(std::log2(sup)));
  double lo = 0.0, hi = 0.0;
  int k = k_hi;
  double last_lower = 0.0;
  while (true) {
    --k;
    auto b = super_level_bracket(g, F, r, std::ldexp(1.0, k));
    double w = std::pow(std::ldexp(1.0, k), p);
    lo += w * b.lower.value();
    hi += w * b.upper.value();
    last_lower = b.lower.value();
    if (b.upper.value() >= s0 * (1.0 - 1e-12) && b.lower.value() >= s0 * (1.0 - 1e-9)) break;
    if (k < k_hi - 96) break;  // quantized endpoints may never close the gap
  }
  // geometric tail over all lower levels: the super level measure sits
  // between the last computed lower endpoint and the support cover
  double tail_w = std::pow(std::ldexp(1.0, k - 1), p) / (1.0 - std::pow(2.0, -p));
  lo += tail_w * last_lower;
  hi += tail_w * s0;
  return {ExtReal(std::pow(lo, 1.0 / p)), ExtReal(std::pow(hi, 1.0 / p))};
}

}  // namespace outerlp
