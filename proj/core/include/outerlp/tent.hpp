#pragma once

#include <utility>

#include "outerlp/dyadic.hpp"

namespace outerlp {

// Tent-space norm on the truncated grid. p < inf: L^p norm over base points x
// (finest-cell centers) of A_r(F)(x), the l^r average of F over the cone
// |x - y| < t with the exact per-cell integral of dy dt / t^{d+1}. p = inf:
// sup over tent apexes (x, 2^j) of the ball-normalized l^r average over the
// tent |x - y| < s - t against dy dt / t. Cell membership is decided at the
// cell center (y_c, 3/4 of the band top); distances are sup-norm.
ExtReal tent_norm(const DyadicGrid& g, const CellFunction& F, double p, double r);

// tent norm divided by the outer quasi-norm bracket: (vs upper, vs lower)
std::pair<double, double> equivalence_ratio(const DyadicGrid& g, const CellFunction& F,
                                            double p, double r);

// multiply each cell by (band top 2^j)^a
CellFunction scale_map(const DyadicGrid& g, const CellFunction& F, double a);

struct HlsResult {
  double ratio = 0.0;       // ||t^{d/p-d/q} F||_{L^q(l^{r2})} upper over
                            // ||F||_{L^p(l^{r1})} lower
  double atom_bound = 0.0;  // ||t^{d-d/q} a||_{T^q_{r2}} for the normalized atom
};

// Scale-shift inclusion experiment plus the unit-tent atom bound. The atom is
// constant on the cells of the box over a side-1 base (side 2^{j_min} when the
// grid has no unit scale), normalized so its T^{r1}_{r1} norm equals
// |B|^{1/r1 - 1} exactly.
HlsResult hls_check(const DyadicGrid& g, const CellFunction& F, double p, double q,
                    double r1, double r2);

}  // namespace outerlp
