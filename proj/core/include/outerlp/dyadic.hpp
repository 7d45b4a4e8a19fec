#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "outerlp/errors.hpp"
#include "outerlp/ext_real.hpp"

namespace outerlp {

// Truncated dyadic upper half space over the base cube [0, 2^{j_max})^d.
// Whitney cells are dyadic cubes Q of side 2^j paired with the height band
// (2^{j-1}, 2^j]; dyadic boxes are the (d+1)-cubes B x (0, side(B)], so the
// boxes and the cells share one tree: the node of cube B is both the box over
// B and that box's top cell, and a cell lies in a box iff its cube is a
// subcube. sigma(box) = |B|.
struct DyadicGrid {
  int d = 1;
  int j_min = 0;
  int j_max = 0;
  int L = 0;  // j_max - j_min; relative scales s run over [0, L]
  std::vector<int> offset;  // cell-id offset per relative scale
  int total = 0;

  int n_side(int s) const { return 1 << (L - s); }
  int cells_at(int s) const { return d == 1 ? n_side(s) : n_side(s) * n_side(s); }
  int id(int s, int pos) const { return offset[s] + pos; }
  int scale_of(int id) const;
  int pos_of(int id) const { return id - offset[scale_of(id)]; }
  int root() const { return total - 1; }

  int parent(int id) const;
  int child(int id, int i) const;  // i in [0, 2^d); requires scale > 0
  int kids() const { return 1 << d; }
  bool is_ancestor_or_self(int anc, int node) const;

  double side(int s) const { return std::ldexp(1.0, j_min + s); }
  // lower corner of the cube of a node, written into lo[0..d)
  void corner(int id, double* lo) const;

  double sigma(int id) const { return std::pow(side(scale_of(id)), d); }
  // integral of t^{-1} over the cell: |Q| ln 2
  double cell_mass(int id) const { return sigma(id) * 0.6931471805599453094; }
  // base volume in units of finest cells
  std::int64_t units(int id) const { return std::int64_t(1) << (d * scale_of(id)); }
};

// Throws GridTooLarge beyond 10^7 cells; d must be 1 or 2.
DyadicGrid build_grid(int d, int j_min, int j_max);

struct CellFunction {
  std::vector<double> values;
  static CellFunction zero(const DyadicGrid& g) {
    return CellFunction{std::vector<double>(g.total, 0.0)};
  }
};

// ell^r size of F over a box: (sigma^{-1} sum_{cells in subtree} mass F^r)^{1/r},
// max over subtree cells for r = inf.
ExtReal size_box(const DyadicGrid& g, const CellFunction& F, int box, double r);
// Same with removed cells masked out.
ExtReal size_box_excluding(const DyadicGrid& g, const CellFunction& F,
                           const std::vector<char>& removed, int box, double r);
// sup over all boxes
ExtReal sup_size(const DyadicGrid& g, const CellFunction& F, double r);

struct DyadicDecomposition {
  struct Selected {
    int k = 0;    // level 2^k
    int n = 0;    // selection index within the level, from 1
    int box = -1;
  };
  std::vector<Selected> selected;           // chronological: k descending, n ascending
  std::map<int, std::vector<int>> doubling; // per level k, the maximal boxes Q_i
  int k_max = 0;
  int k_min = 0;
};

// Double greedy recursion: backward on k, forward on n; at each step the
// sigma-maximal violating box is selected (lexicographic tie-break) and its
// subtree removed; at the start of each level the maximal boxes whose base is
// at least half covered by bases selected at higher levels are removed too.
// For r = inf a box violates when its own top cell survives above 2^k.
DyadicDecomposition greedy_decompose_dyadic(const DyadicGrid& g, const CellFunction& F,
                                            double r);

struct DyadicReport {
  bool selection_exceeds_level = true;  // per (k,n) strict size inequality
  bool stopping_condition = true;       // per k masked sup-size <= 2^k
  bool carleson_ok = true;              // sum of selected sigma inside any box <= 2 sigma
  double carleson_constant = 0.0;
  bool sparse_ok = true;                // every base > half free of earlier bases
  double min_sparse_fraction = 1.0;
  double C_emp = 0.0;                   // per-level sigma sum over the exact super level
                                        // measure at 2^{k-1}

  bool pass() const {
    return selection_exceeds_level && stopping_condition && carleson_ok && sparse_ok;
  }
};

DyadicReport verify_dyadic_decomposition(const DyadicGrid& g, const CellFunction& F, double r,
                                         const DyadicDecomposition& dec);

// Certified interval for a quantity defined by an intractable infimum.
struct Bracket {
  ExtReal lower;
  ExtReal upper;
  bool exact() const { return lower == upper; }
};

// mu(ell^r(F) > lambda) on the truncated grid. The infimum over removed box
// unions decomposes along the cube tree, so a bottom-up Pareto sweep
// (cost -> least retained subtree mass under all box constraints) computes it
// exactly; on grids where the sweep would be too wide the purchase costs are
// quantized, floor for the lower endpoint and ceil for the upper.
Bracket super_level_bracket(const DyadicGrid& g, const CellFunction& F, double r,
                            double lambda);

// Discrete layer cake (sum_k 2^{kp} mu(ell^r(F) > 2^k))^{1/p} with bracket
// endpoints combined monotonically; the flat tail below the last breakpoint
// is summed as a geometric series. p = inf returns the exact sup over boxes.
Bracket outer_quasinorm(const DyadicGrid& g, const CellFunction& F, double p, double r);

}  // namespace outerlp
