#include "outerlp/finite_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace outerlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const std::vector<double>& mu, Mask a, Mask b) {
  // a, b arbitrary; checks monotonicity (a subset of b) and subadditivity.
  if (subset_of(a, b) && mu[a] > mu[b]) {
    std::ostringstream os;
    os << "monotonicity violated: mu(" << a << ")=" << mu[a] << " > mu(" << b << ")=" << mu[b];
    throw AxiomViolation(AxiomViolation::Kind::Monotonicity, a, b, os.str());
  }
  if (mu[a | b] > mu[a] + mu[b]) {
    std::ostringstream os;
    os << "subadditivity violated on masks " << a << ", " << b;
    throw AxiomViolation(AxiomViolation::Kind::Subadditivity, a, b, os.str());
  }
}

void validate_table(int n, const std::vector<double>& mu) {
  const Mask all = full_mask(n);
  if (mu.size() != std::size_t(all) + 1)
    throw AxiomViolation(AxiomViolation::Kind::EmptySet, 0, 0,
                         "explicit table must cover all subsets");
  if (mu[0] != 0.0)
    throw AxiomViolation(AxiomViolation::Kind::EmptySet, 0, 0, "mu(empty) != 0");
  for (Mask a = 0; a <= all; ++a) {
    if (mu[a] < 0.0 || std::isnan(mu[a]))
      throw AxiomViolation(AxiomViolation::Kind::Monotonicity, a, a, "mu must be >= 0");
  }
  if (n <= 12) {
    // Exhaustive over all pairs.
    for (Mask a = 0; a <= all; ++a)
      for (Mask b = a; b <= all; ++b) check_pair(mu, a, b);
  } else {
    // Randomized sampling above the exhaustive cap (deterministic stream).
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state;
    };
    for (int i = 0; i < 2'000'000; ++i) {
      Mask a = Mask(next()) & all;
      Mask b = Mask(next()) & all;
      check_pair(mu, a, b);
      check_pair(mu, a & b, b);
    }
  }
}

}  // namespace

FiniteOuterSpace build_space(std::vector<double> weights, MeasureSource source) {
  FiniteOuterSpace s;
  s.n_ = int(weights.size());
  if (s.n_ == 0) throw SpaceTooLarge("point set must be nonempty");
  if (s.n_ > kMaxPoints) throw SpaceTooLarge("more than 22 points: exact search out of scope");
  for (int i = 0; i < s.n_; ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw NonPositiveWeight("weight of point " + std::to_string(i) +
                              " must be strictly positive and finite");
  }
  s.weights_ = std::move(weights);

  if (auto* gens = std::get_if<Generators>(&source)) {
    if (int(gens->items.size()) > kMaxGenerators)
      throw GeneratorLimitExceeded("more than 22 generators: exact covers out of scope");
    Mask covered = 0;
    for (const auto& g : gens->items) {
      if (!(g.sigma > 0.0) || !std::isfinite(g.sigma))
        throw AxiomViolation(AxiomViolation::Kind::EmptySet, g.set, g.set,
                             "generator sigma must be strictly positive and finite");
      covered |= g.set;
    }
    s.covered_ = covered;
  } else {
    const auto& table = std::get<ExplicitTable>(source);
    validate_table(s.n_, table.mu);
    s.covered_ = full_mask(s.n_);
  }
  s.source_ = std::move(source);

  // Precompute the full mu table for generator spaces when affordable: sweep
  // subcollections into per-union minima, then take minima over supersets.
  if (s.has_generators()) {
    const auto& gens = s.generators();
    const int g = int(gens.size());
    if (s.n_ <= 20 && g <= kMaxGenerators && (std::size_t(1) << g) <= (std::size_t(1) << 22)) {
      const std::size_t nsub = std::size_t(1) << s.n_;
      std::vector<double> best(nsub, kInf);
      best[0] = 0.0;
      // cost/union of every subcollection, built incrementally.
      std::vector<double> cost(std::size_t(1) << g, 0.0);
      std::vector<Mask> uni(std::size_t(1) << g, 0);
      for (std::size_t c = 1; c < (std::size_t(1) << g); ++c) {
        int lowest = __builtin_ctzll(c);
        cost[c] = cost[c & (c - 1)] + gens[lowest].sigma;
        uni[c] = uni[c & (c - 1)] | gens[lowest].set;
        best[uni[c]] = std::min(best[uni[c]], cost[c]);
      }
      // min over supersets: standard subset-sum style sweep.
      for (int bit = 0; bit < s.n_; ++bit) {
        for (Mask a = 0; a < Mask(nsub); ++a) {
          if (!(a & (Mask(1) << bit))) best[a] = std::min(best[a], best[a | (Mask(1) << bit)]);
        }
      }
      best[0] = 0.0;
      s.mu_table_ = std::move(best);
    }
  }
  return s;
}

double FiniteOuterSpace::measure_by_branch_and_bound(Mask A) const {
  const auto& gens = generators();
  double best = kInf;
  // Recurse on the lowest uncovered point; admissible lower bound 0.
  auto rec = [&](auto&& self, Mask uncovered, double cost) -> void {
    if (cost >= best) return;
    if (uncovered == 0) {
      best = cost;
      return;
    }
    int x = __builtin_ctz(uncovered);
    for (const auto& g : gens) {
      if (g.set & (Mask(1) << x)) self(self, uncovered & ~g.set, cost + g.sigma);
    }
  };
  rec(rec, A, 0.0);
  return best;
}

ExtReal FiniteOuterSpace::outer_measure(Mask A) const {
  A &= all();
  if (A == 0) return ExtReal(0.0);
  if (!mu_table_.empty()) return ExtReal(mu_table_[A]);
  if (has_generators()) {
    if (!subset_of(A, covered_)) return ExtReal::inf();
    return ExtReal(measure_by_branch_and_bound(A));
  }
  return ExtReal(std::get<ExplicitTable>(source_).mu[A]);
}

}  // namespace outerlp
