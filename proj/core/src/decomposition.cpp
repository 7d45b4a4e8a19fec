#include "outerlp/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace outerlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Candidate sets for the greedy selection: the sup quasi-norm is attained on
// generators for generated measures, on arbitrary subsets for tables.
std::vector<Mask> candidate_sets(const FiniteOuterSpace& s) {
  std::vector<Mask> out;
  if (s.has_generators()) {
    for (const auto& g : s.generators()) out.push_back(g.set);
  } else {
    if (s.size() > 12) throw SpaceTooLarge("table-backed decomposition beyond 12 points");
    for (Mask a = 1; a <= s.all(); ++a) out.push_back(a);
  }
  return out;
}

}  // namespace

Decomposition greedy_decompose_finite(const FiniteOuterSpace& s, const PointFunction& f,
                                      double r) {
  if (!(r > 0.0) || std::isinf(r)) throw InvalidExponents("decomposition needs 0 < r < inf");
  const ExtReal sup = linf_quasinorm(s, f, r);
  if (sup.is_inf()) throw NotInLinf("sup quasi-norm is infinite");

  Decomposition dec;
  if (sup.value() == 0.0) return dec;
  dec.k_max = int(std::ceil(std::log2(sup.value())));
  // Exact powers of two still satisfy ||f|| <= 2^{k_max}.
  if (std::ldexp(1.0, dec.k_max) < sup.value()) ++dec.k_max;

  const auto cands = candidate_sets(s);
  Mask selected = 0;  // F_{k+1} while processing level k
  int k = dec.k_max;
  while (true) {
    --k;
    const double level = std::ldexp(1.0, k);
    Mask ek = 0;
    // Union in maximal-size violators until the stopping condition holds.
    while (true) {
      double best_v = level;
      Mask best = 0;
      for (Mask a : cands) {
        double v = size_excluding(s, f, selected | ek, a, r).value();
        if (v > best_v) {
          best_v = v;
          best = a;
        }
      }
      if (best == 0) break;
      ek |= best;
    }
    if (ek) {
      dec.levels[k] = ek;
      selected |= ek;
    }
    dec.k_min = k;
    if (linf_excluding(s, f, selected, r).value() == 0.0) break;
  }
  return dec;
}

DecompositionReport verify_decomposition(const FiniteOuterSpace& s, const PointFunction& f,
                                         double r, const Decomposition& dec) {
  DecompositionReport rep;
  if (dec.levels.empty()) return rep;
  auto fail = [&rep](bool& flag, int k) {
    flag = false;
    rep.fail_level = k;
  };
  for (int k = dec.k_min; k <= dec.k_max; ++k) {
    const double level = std::ldexp(1.0, k);
    const Mask ek = dec.level_set(k);
    const Mask f_next = dec.F(k + 1);
    if (ek) {
      // (a) the selected set genuinely exceeds the level
      if (!(size_excluding(s, f, f_next, ek, r).value() > level))
        fail(rep.selected_exceeds_level, k);
      // (d) empirical optimal-covering constant against level 2^{k-1}
      double denom = super_level_measure(s, f, r, level / 2.0).value();
      double num = s.outer_measure(ek).value();
      rep.C_emp = std::max(rep.C_emp, denom > 0.0 ? num / denom : kInf);
    }
    // (b) stopping condition at this level
    if (!(linf_excluding(s, f, dec.F(k), r).value() <= level * (1 + 1e-12)))
      fail(rep.stopping_condition, k);
    // (c) the union of selected sets covers the super level set
    double sl = super_level_measure(s, f, r, level).value();
    double sum = 0.0;
    for (const auto& [l, e] : dec.levels)
      if (l >= k) sum += s.outer_measure(e).value();
    if (!(sl <= sum * (1 + 1e-12))) fail(rep.covers_super_level, k);
  }
  return rep;
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

DualWitness dual_witness(const FiniteOuterSpace& s, const PointFunction& f, double p,
                         double r, const Decomposition& dec) {
  if (!(p >= 1.0) || !(r >= 1.0)) throw InvalidExponents("duality needs p, r >= 1");
  const int n = s.size();
  DualWitness w;
  w.g = PointFunction::zero(n);

  if (std::isinf(p)) {
    if (std::isinf(r)) {
      // pick a covered point attaining the sup
      w.case_tag = DualCase::kPInfRInf;
      int best = -1;
      for (int x = 0; x < n; ++x)
        if ((s.covered() >> x) & 1)
          if (best < 0 || f.values[x] > f.values[best]) best = x;
      if (best >= 0 && f.values[best] > 0.0) {
        w.g.values[best] = 1.0;
        w.witness_set = Mask(1) << best;
      }
      return w;
    }
    // g = 1_E f^{r-1} on a set attaining the sup quasi-norm
    w.case_tag = DualCase::kPInfRFinite;
    Mask best = 0;
    double best_v = 0.0;
    if (s.has_generators()) {
      for (const auto& g : s.generators()) {
        double v = size(s, f, g.set, r).value();
        if (v > best_v) {
          best_v = v;
          best = g.set;
        }
      }
    } else {
      for (Mask a = 1; a <= s.all(); ++a) {
        double v = size(s, f, a, r).value();
        if (v > best_v) {
          best_v = v;
          best = a;
        }
      }
    }
    if (best) {
      w.witness_set = best;
      for (Mask m = best; m; m &= m - 1) {
        int x = __builtin_ctz(m);
        w.g.values[x] = std::pow(f.values[x], r - 1.0);
      }
    }
    return w;
  }

  if (std::isinf(r)) throw UnsupportedExponents("no constructed witness for r = inf, p < inf");
  if (p == 1.0 && r > 1.0)
    throw UnsupportedExponents("p = 1 with r > 1: duality fails in this range");

  w.case_tag = DualCase::kPFiniteRFinite;
  for (const auto& [k, ek] : dec.levels) {
    const Mask fresh = ek & ~dec.F(k + 1);
    const double coef = std::pow(std::ldexp(1.0, k), p - r);
    for (Mask m = fresh; m; m &= m - 1) {
      int x = __builtin_ctz(m);
      w.g.values[x] = coef * std::pow(f.values[x], r - 1.0);
    }
  }
  return w;
}

DualityGap duality_gap(const FiniteOuterSpace& s, const PointFunction& f, double p, double r) {
  DualityGap out;
  const double norm =
      std::isinf(p) ? linf_quasinorm(s, f, r).value() : lp_quasinorm(s, f, p, r).value();
  out.upper = 2.0 * norm;
  if (norm == 0.0) {
    out.lower = 0.0;
    out.ratio = 1.0;
    return out;
  }
  const double pc = conjugate_exponent(p);
  const double rc = conjugate_exponent(r);
  auto normalized_pairing = [&](const PointFunction& g) -> double {
    double gn = std::isinf(pc) ? linf_quasinorm(s, g, rc).value()
                               : lp_quasinorm(s, g, pc, rc).value();
    if (gn == 0.0 || std::isinf(gn)) return 0.0;
    double pr = pairing(s, f, g).value();
    return std::isfinite(pr) ? pr / gn : 0.0;
  };

  // Constant candidate: the only general one when p = 1, r > 1, and a
  // useful floor elsewhere.
  out.lower = normalized_pairing(PointFunction{std::vector<double>(s.size(), 1.0)});
  if (!(p == 1.0 && r > 1.0)) {
    Decomposition dec;
    if (!std::isinf(p)) dec = greedy_decompose_finite(s, f, r);
    auto w = dual_witness(s, f, p, r, dec);
    out.lower = std::max(out.lower, normalized_pairing(w.g));
  }
  out.ratio = out.lower > 0.0 ? norm / out.lower : kInf;
  return out;
}

}  // namespace outerlp
