#pragma once

#include <map>
#include <optional>

#include "outerlp/quasinorms.hpp"

namespace outerlp {

// Output of the greedy level decomposition: selected sets E_k per dyadic
// level 2^k, empty levels absent. F_k = union of E_l over l >= k.
struct Decomposition {
  std::map<int, Mask> levels;
  int k_max = 0;  // ceil(log2 ||f||_{Linf(l^r)}); E_k empty for k >= k_max
  int k_min = 0;  // last processed level

  Mask level_set(int k) const {
    auto it = levels.find(k);
    return it == levels.end() ? 0 : it->second;
  }
  Mask F(int k) const {
    Mask u = 0;
    for (const auto& [l, e] : levels)
      if (l >= k) u |= e;
    return u;
  }
  Mask support() const { return F(std::numeric_limits<int>::min()); }
};

// Greedy backward recursion on levels: at level k, while some candidate set
// has masked size above 2^k, union in the one of maximal size (lexicographic
// tie-break) until the masked sup quasi-norm drops to 2^k.
Decomposition greedy_decompose_finite(const FiniteOuterSpace& s, const PointFunction& f,
                                      double r);

// Per-level checks of the four decomposition properties, with the empirical
// optimal-covering constant.
struct DecompositionReport {
  bool selected_exceeds_level = true;   // (a) l^r(f 1_{F_{k+1}^c})(E_k) > 2^k
  bool stopping_condition = true;       // (b) ||f 1_{F_k^c}||_{Linf(l^r)} <= 2^k
  bool covers_super_level = true;       // (c) mu(l^r(f) > 2^k) <= sum_{l>=k} mu(E_l)
  double C_emp = 0.0;                   // (d) max_k mu(E_k) / mu(l^r(f) > 2^{k-1})
  int fail_level = 0;

  bool pass() const {
    return selected_exceeds_level && stopping_condition && covers_super_level &&
           std::isfinite(C_emp);
  }
};

DecompositionReport verify_decomposition(const FiniteOuterSpace& s, const PointFunction& f,
                                         double r, const Decomposition& dec);

enum class DualCase {
  kPFiniteRFinite,  // g = sum_k 2^{k(p-r)} 1_{E_k \ F_{k+1}} f^{r-1}
  kPInfRFinite,     // g = 1_E f^{r-1}, E witnessing the sup quasi-norm
  kPInfRInf,        // g = indicator of a covered point attaining the sup
};

struct DualWitness {
  PointFunction g;
  DualCase case_tag = DualCase::kPFiniteRFinite;
  std::optional<Mask> witness_set;
};

// Candidate dual function for the pairing lower bound. Throws
// UnsupportedExponents for p = 1 with r > 1 (disproved range) and for
// r = inf with p < inf.
DualWitness dual_witness(const FiniteOuterSpace& s, const PointFunction& f, double p,
                         double r, const Decomposition& dec);

struct DualityGap {
  double lower = 0.0;  // best normalized pairing over candidate witnesses
  double upper = 0.0;  // 2 ||f||, the Hoelder ceiling for normalized pairings
  double ratio = 1.0;  // ||f|| / lower; >= 1/2 always, large = duality fails
};

// Measures how well the constructed witnesses certify the quasi-norm from
// below. For p = 1, r > 1 the constant function is used as the candidate
// (the constructive witness does not exist in that range).
DualityGap duality_gap(const FiniteOuterSpace& s, const PointFunction& f, double p, double r);

// Conjugate exponent, with 1 <-> inf.
double conjugate_exponent(double p);

}  // namespace outerlp
