#include "outerlp/quasinorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace outerlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double size_impl(const FiniteOuterSpace& s, const PointFunction& f, Mask excluded, Mask A,
                 double r) {
  A &= s.all() & ~excluded;
  if (A == 0) return 0.0;
  const ExtReal mu = s.outer_measure(A);
  if (std::isinf(r)) {
    if (mu.is_inf()) return 0.0;
    double mx = 0.0;
    for (Mask m = A; m; m &= m - 1) mx = std::max(mx, f.values[__builtin_ctz(m)]);
    return mx;
  }
  double mass = 0.0;
  for (Mask m = A; m; m &= m - 1) {
    int x = __builtin_ctz(m);
    double v = f.values[x];
    if (v > 0.0) mass += s.weight(x) * std::pow(v, r);
  }
  if (mass == 0.0) return 0.0;
  if (mu.is_inf()) return 0.0;
  if (mu.value() == 0.0) return kInf;
  return std::pow(mass / mu.value(), 1.0 / r);
}

double linf_impl(const FiniteOuterSpace& s, const PointFunction& f, Mask excluded, double r) {
  double best = 0.0;
  if (s.has_generators()) {
    for (const auto& g : s.generators())
      best = std::max(best, size_impl(s, f, excluded, g.set, r));
  } else {
    const Mask all = s.all();
    for (Mask a = 1; a <= all; ++a) best = std::max(best, size_impl(s, f, excluded, a, r));
  }
  return best;
}

// Per-subset profile: v[A] = sup-size of f*1_{A^c}, m[A] = mu(A).
struct Profile {
  std::vector<double> v;
  std::vector<double> m;
};

Profile superlevel_profile(const FiniteOuterSpace& s, const PointFunction& f, double r) {
  const int n = s.size();
  if (s.has_generators()) {
    if (n > 20) throw SpaceTooLarge("subset enumeration beyond 20 points");
  } else {
    if (n > 12) throw SpaceTooLarge("subset enumeration over tables beyond 12 points");
  }
  const std::size_t nsub = std::size_t(1) << n;
  Profile pr;
  pr.v.resize(nsub);
  pr.m.resize(nsub);
  for (Mask a = 0; a < Mask(nsub); ++a) {
    pr.v[a] = linf_impl(s, f, a, r);
    pr.m[a] = s.outer_measure(a).value();
  }
  return pr;
}

// Breakpoints of lambda -> mu(ell^r(f) > lambda): sorted distinct finite
// sup-size values, each with the prefix-minimal feasible measure.
struct StepFunction {
  std::vector<double> lambda;  // ascending, lambda[0] == 0
  std::vector<double> mu;      // value on [lambda[i], lambda[i+1])
};

StepFunction superlevel_steps(const Profile& pr) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(pr.v.size());
  for (std::size_t i = 0; i < pr.v.size(); ++i)
    if (std::isfinite(pr.v[i])) pts.emplace_back(pr.v[i], pr.m[i]);
  std::sort(pts.begin(), pts.end());
  StepFunction st;
  double run = kInf;
  for (const auto& [v, m] : pts) {
    run = std::min(run, m);
    if (!st.lambda.empty() && st.lambda.back() == v) {
      st.mu.back() = run;
    } else {
      st.lambda.push_back(v);
      st.mu.push_back(run);
    }
  }
  return st;
}

double superlevel_at(const StepFunction& st, double lambda) {
  // value of the step function at lambda (> 0): min mu over breakpoints <= lambda.
  auto it = std::upper_bound(st.lambda.begin(), st.lambda.end(), lambda);
  if (it == st.lambda.begin()) return kInf;
  return st.mu[std::size_t(it - st.lambda.begin()) - 1];
}

void check_r(double r) {
  if (!(r > 0.0)) throw InvalidExponents("r must be in (0, inf]");
}
void check_p(double p) {
  if (!(p > 0.0) || std::isinf(p)) throw InvalidExponents("p must be in (0, inf)");
}

}  // namespace

ExtReal size(const FiniteOuterSpace& s, const PointFunction& f, Mask A, double r) {
  check_r(r);
  return ExtReal(size_impl(s, f, 0, A, r));
}

ExtReal size_excluding(const FiniteOuterSpace& s, const PointFunction& f, Mask excluded,
                       Mask A, double r) {
  check_r(r);
  return ExtReal(size_impl(s, f, excluded, A, r));
}

ExtReal linf_quasinorm(const FiniteOuterSpace& s, const PointFunction& f, double r) {
  check_r(r);
  return ExtReal(linf_impl(s, f, 0, r));
}

ExtReal linf_excluding(const FiniteOuterSpace& s, const PointFunction& f, Mask excluded,
                       double r) {
  check_r(r);
  return ExtReal(linf_impl(s, f, excluded, r));
}

ExtReal linf_full_enumeration(const FiniteOuterSpace& s, const PointFunction& f, double r) {
  check_r(r);
  if (s.size() > kMaxPoints) throw SpaceTooLarge("full enumeration beyond 22 points");
  double best = 0.0;
  const Mask all = s.all();
  for (Mask a = 1; a <= all && a != 0; ++a)
    best = std::max(best, size_impl(s, f, 0, a, r));
  return ExtReal(best);
}

ExtReal super_level_measure(const FiniteOuterSpace& s, const PointFunction& f, double r,
                            double lambda, SuperLevelStrategy strategy) {
  check_r(r);
  if (strategy == SuperLevelStrategy::kAuto)
    strategy = SuperLevelStrategy::kBruteForce;
  if (strategy == SuperLevelStrategy::kBruteForce) {
    const int n = s.size();
    if (s.has_generators()) {
      if (n > 20) throw SpaceTooLarge("brute-force super level beyond 20 points");
    } else if (n > 12) {
      throw SpaceTooLarge("brute-force super level over tables beyond 12 points");
    }
    double best = kInf;
    const Mask all = s.all();
    for (Mask a = 0;; ++a) {
      if (linf_impl(s, f, a, r) <= lambda) best = std::min(best, s.outer_measure(a).value());
      if (a == all) break;
    }
    return ExtReal(best);
  }
  // Cover-union strategy: infimum of sigma-sums over subcollections whose
  // union is feasible.
  if (!s.has_generators())
    throw SpaceTooLarge("cover-union strategy requires a generated measure");
  const auto& gens = s.generators();
  const int g = int(gens.size());
  double best = kInf;
  for (std::size_t c = 0; c < (std::size_t(1) << g); ++c) {
    Mask a = 0;
    double cost = 0.0;
    for (std::size_t cc = c; cc; cc &= cc - 1) {
      int i = __builtin_ctzll(cc);
      a |= gens[i].set;
      cost += gens[i].sigma;
    }
    if (cost < best && linf_impl(s, f, a, r) <= lambda) best = cost;
  }
  return ExtReal(best);
}

ExtReal lp_quasinorm(const FiniteOuterSpace& s, const PointFunction& f, double p, double r,
                     LayerCakeMode mode) {
  check_p(p);
  check_r(r);
  Profile pr = superlevel_profile(s, f, r);
  StepFunction st = superlevel_steps(pr);
  if (st.lambda.empty()) return ExtReal::inf();  // no finite sup-size at all
  if (mode == LayerCakeMode::kIntegral) {
    // The super level measure is a right-continuous step function; the
    // layer-cake integral is a finite sum over its breakpoints.
    if (st.mu.back() > 0.0) return ExtReal::inf();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < st.lambda.size(); ++i) {
      if (st.mu[i] == 0.0) continue;
      acc += st.mu[i] * (std::pow(st.lambda[i + 1], p) - std::pow(st.lambda[i], p));
    }
    return ExtReal(std::pow(acc, 1.0 / p));
  }
  // Discrete mode over dyadic levels.
  if (st.mu.back() > 0.0) return ExtReal::inf();
  double sup = st.lambda.back();  // sup-size of f
  if (sup == 0.0) return ExtReal(0.0);
  double minpos = kInf;
  for (double v : st.lambda)
    if (v > 0.0) minpos = std::min(minpos, v);
  int k_lo = int(std::floor(std::log2(minpos))) - 1;
  int k_hi = int(std::ceil(std::log2(sup)));
  double acc = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    double lvl = std::ldexp(1.0, k);
    acc += std::pow(lvl, p) * superlevel_at(st, lvl);
  }
  return ExtReal(std::pow(acc, 1.0 / p));
}

ExtReal lpweak_quasinorm(const FiniteOuterSpace& s, const PointFunction& f, double p,
                         double r) {
  check_p(p);
  check_r(r);
  Profile pr = superlevel_profile(s, f, r);
  StepFunction st = superlevel_steps(pr);
  if (st.lambda.empty() || st.mu.back() > 0.0) return ExtReal::inf();
  // On [lambda_i, lambda_{i+1}) the sup of lambda^p * mu is attained at the
  // right endpoint.
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < st.lambda.size(); ++i)
    best = std::max(best, st.mu[i] * std::pow(st.lambda[i + 1], p));
  return ExtReal(std::pow(best, 1.0 / p));
}

ExtReal lp_classical(const FiniteOuterSpace& s, const PointFunction& f, double p) {
  if (std::isinf(p)) {
    double mx = 0.0;
    for (double v : f.values) mx = std::max(mx, v);
    return ExtReal(mx);
  }
  check_p(p);
  double acc = 0.0;
  for (int x = 0; x < s.size(); ++x)
    if (f.values[x] > 0.0) acc += s.weight(x) * std::pow(f.values[x], p);
  return ExtReal(std::pow(acc, 1.0 / p));
}

ExtReal pairing(const FiniteOuterSpace& s, const PointFunction& f, const PointFunction& g) {
  double acc = 0.0;
  for (int x = 0; x < s.size(); ++x) {
    double t = f.values[x] * g.values[x];
    if (std::isnan(t)) t = 0.0;  // 0 * inf
    if (t > 0.0) acc += s.weight(x) * t;
  }
  return ExtReal(acc);
}

}  // namespace outerlp
