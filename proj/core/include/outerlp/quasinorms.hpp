#pragma once

#include "outerlp/finite_space.hpp"

namespace outerlp {

// ell^r size of f over A: (mu(A)^{-1} sum_{x in A} w(x) f(x)^r)^{1/r} for
// finite r; max of f over A for r = inf (0 when mu(A) = inf so that the sup
// quasi-norm ignores uncovered points). Conventions: size over empty = 0,
// mu(A) = inf => 0 for finite r, mu(A) = 0 with positive mass => +inf.
ExtReal size(const FiniteOuterSpace& s, const PointFunction& f, Mask A, double r);

// Same with f replaced by f * 1_{excluded^c}.
ExtReal size_excluding(const FiniteOuterSpace& s, const PointFunction& f, Mask excluded,
                       Mask A, double r);

// sup_A ell^r(f)(A). For generator-backed spaces the sup runs over the
// generators; for explicit tables over all subsets (n <= 22).
ExtReal linf_quasinorm(const FiniteOuterSpace& s, const PointFunction& f, double r);
ExtReal linf_excluding(const FiniteOuterSpace& s, const PointFunction& f, Mask excluded,
                       double r);

// Oracle variant: full enumeration over all 2^n subsets regardless of the
// measure source. Used to cross-check the generator reduction.
ExtReal linf_full_enumeration(const FiniteOuterSpace& s, const PointFunction& f, double r);

enum class SuperLevelStrategy {
  kAuto,
  kBruteForce,   // exact infimum over all subsets A
  kCoverUnions,  // generator spaces: infimum over unions of subcollections
};

// mu(ell^r(f) > lambda): infimum of mu(A) over A with the masked sup-size
// <= lambda.
ExtReal super_level_measure(const FiniteOuterSpace& s, const PointFunction& f, double r,
                            double lambda,
                            SuperLevelStrategy strategy = SuperLevelStrategy::kAuto);

enum class LayerCakeMode {
  kIntegral,  // exact evaluation of the layer-cake integral over breakpoints
  kDiscrete,  // (sum_k 2^{kp} mu(ell^r(f) > 2^k))^{1/p}
};

// Outer L^p(ell^r) quasi-norm.
ExtReal lp_quasinorm(const FiniteOuterSpace& s, const PointFunction& f, double p, double r,
                     LayerCakeMode mode = LayerCakeMode::kIntegral);

// Weak quasi-norm: (sup_lambda lambda^p mu(ell^r(f) > lambda))^{1/p}.
ExtReal lpweak_quasinorm(const FiniteOuterSpace& s, const PointFunction& f, double p, double r);

// Classical L^p(X, omega) norm (p = inf gives max f).
ExtReal lp_classical(const FiniteOuterSpace& s, const PointFunction& f, double p);

// L^1(X, omega) pairing sum_x w(x) f(x) g(x).
ExtReal pairing(const FiniteOuterSpace& s, const PointFunction& f, const PointFunction& g);

}  // namespace outerlp
