#pragma once

#include <string>
#include <vector>

#include "outerlp/dyadic.hpp"

namespace outerlp {

// function on the finest base cells of the grid, piecewise constant; signed
// values are allowed for the mean-zero atom path
struct BaseFunction {
  std::vector<double> values;
  static BaseFunction zero(const DyadicGrid& g) {
    return BaseFunction{std::vector<double>(g.cells_at(0), 0.0)};
  }
};

enum class Kernel {
  kIndicatorBox,  // 1_{(-1,1)^d}, exact overlap arithmetic
  kDecay,         // (1 + |z|)^{-d-eps}, midpoint quadrature per source cell
  kSmoothBump,    // exp(-1/(1-|z|^2)) on |z|<1, midpoint quadrature
};

// Convolution with the L^1-dilated kernel: F(y,t) = t^{-d} int f(z)
// phi(t^{-1}(y-z)) dz at each cell center y, with t the band top 2^j. Decay
// and bump kernels use midpoint quadrature with one refinement halving; the
// largest correction is reported through quad_error. The bump kernel accepts
// signed f and returns |F|.
CellFunction embed(const DyadicGrid& g, const BaseFunction& f, Kernel kernel,
                   double eps = 1.0, double* quad_error = nullptr);

// the supremal majorant kernel (1 + t^{-1}|y-z|)^{-d-eps}
CellFunction embed_sup(const DyadicGrid& g, const BaseFunction& f, double eps,
                       double* quad_error = nullptr);

// centred Hardy-Littlewood maximal function of |f| at the finest centers,
// radii swept over 2^j within the grid range
BaseFunction maximal_function(const DyadicGrid& g, const BaseFunction& f);

// classical L^p norm of f on the base
double base_lp_norm(const DyadicGrid& g, const BaseFunction& f, double p);

struct TypeRecord {
  std::string label;
  double input_norm = 0.0;    // ||f||_p
  double strong_upper = 0.0;  // ||t^{d/p-d/q} F(f)||_{L^q(l^r)} upper endpoint
  double strong_lower = 0.0;
  double weak_upper = 0.0;    // L^{q,inf} endpoints
  double weak_lower = 0.0;
  double strong_ratio = 0.0;  // strong_upper / input_norm
  double weak_ratio = 0.0;
};

// Embedding type experiment: indicator boxes over a scale sweep, a tent bump,
// and seeded sparse indicator sums, all through the indicator kernel.
std::vector<TypeRecord> type_estimate_report(const DyadicGrid& g, double p, double q,
                                             double r);

struct DivergenceRecord {
  double u = 0.0;
  double size_on_box = 0.0;   // l^r size of t^{d-d/q} F on the box over [0,2u)^d
                              // with the cells of height <= u masked out
  double lambda = 0.0;        // probe level, half the masked size
  double mu_lower = 0.0;      // certified lower endpoint at the probe level
  bool chain_ok = false;      // mu_lower >= u^d
};

struct DivergenceReport {
  std::vector<DivergenceRecord> records;
  double truncated_norm_upper = 0.0;  // L^q(l^r) of t^{d-d/q} F on this grid
  double truncated_norm_lower = 0.0;
  // weak-type variant: l^r size of t^{d/p-d/q} F(1) on the whole-box tent of
  // the grid refined to j_min = -m, m = 1..4, with p = q for finite r and
  // p = inf for r = inf; the sweep is unbounded in m
  std::vector<double> unbounded_size_sweep;
};

// The indicator counterexample f = 1 on the corner unit cube (the visible
// half of (-1,1)^d) embedded over [0, 2^H)^d: the super level lower-bound
// chain at every dyadic u, plus the truncated quasi-norm that grows with H.
DivergenceReport counterexample_divergence(double q, double r, int H_exp);

struct AtomRecord {
  double norm_upper = 0.0;  // ||F_phi(atom)||_{L^1(l^inf)} endpoints
  double norm_lower = 0.0;
  double fit_exponent = 0.0;  // least-squares slope of log mu vs log lambda
  double lambda_max = 0.0;    // super level vanishes above this level
};

// Mean-zero atom |B|^{-1}(1_{left half} - 1_{right half}) on B = [0, 2^j)
// through the bump kernel. Throws AtomViolation if the constructed function
// fails the moment or size condition.
AtomRecord h1_atom_check(const DyadicGrid& g, int j);

}  // namespace outerlp
