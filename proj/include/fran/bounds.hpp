// bounds.hpp - Lower bounds on the minimum normalized delivery time (NDT).
//
// The serial converse is a two-variable linear program over (delta_e,
// delta_f) with the constraint family
//
//     l * delta_e + (M - l) * r * delta_f >= K - (M - l) * (K - l) * mu
//
// for l in [0 : min(M, K)] together with delta_f >= 0 and delta_e >= 1. With
// at most min(M, K) + 3 constraints and two variables the program is solved
// exactly by enumerating constraint-pair intersections; no simplex, no
// tolerances. Vacuous rows (nonpositive right-hand side) are kept so that the
// l-indexing of reported constraints stays uniform, but they can never bind.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fran/errors.hpp"
#include "fran/model.hpp"
#include "fran/rational.hpp"

namespace fran {

// One half-plane: coeff_e * delta_e + coeff_f * delta_f >= rhs.
struct LpConstraint {
  Rational coeff_e;
  Rational coeff_f;
  Rational rhs;
  std::string tag;

  bool satisfied(const Rational& delta_e, const Rational& delta_f) const {
    return coeff_e * delta_e + coeff_f * delta_f >= rhs;
  }
  bool tight(const Rational& delta_e, const Rational& delta_f) const {
    return coeff_e * delta_e + coeff_f * delta_f == rhs;
  }
};

struct LpSolution {
  NdtPoint point;
  std::vector<std::string> active;  // tags of constraints tight at the optimum
};

inline std::vector<LpConstraint> lp_constraints(const SystemParams& p) {
  p.validate();
  std::vector<LpConstraint> cs;
  const int m = p.min_mk();
  for (int l = 0; l <= m; ++l) {
    LpConstraint c;
    c.coeff_e = l;
    c.coeff_f = Rational(p.en_count - l) * p.r;
    c.rhs = Rational(p.user_count) - Rational(BigInt(p.en_count - l) * (p.user_count - l)) * p.mu;
    c.tag = "l=" + std::to_string(l);
    cs.push_back(std::move(c));
  }
  cs.push_back({Rational(0), Rational(1), Rational(0), "delta_f>=0"});
  cs.push_back({Rational(1), Rational(0), Rational(1), "delta_e>=1"});
  return cs;
}

namespace detail {

// Exact minimizer of delta_e + delta_f over an intersection of half-planes.
// Both objective coefficients are positive and the region sits inside
// delta_e >= 1, delta_f >= 0, so when the region is nonempty the optimum is
// attained at the intersection of two constraint lines; enumerating all pairs
// (the bound constraints included) therefore covers every candidate vertex.
inline LpSolution solve_min_total(const std::vector<LpConstraint>& cs) {
  for (const auto& c : cs)
    if (c.coeff_e == 0 && c.coeff_f == 0 && c.rhs > 0)
      throw InfeasibleError("constraint '" + c.tag + "' cannot be met: no finite delivery time exists");

  bool found = false;
  Rational best_e, best_f, best_obj;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const Rational det = cs[i].coeff_e * cs[j].coeff_f - cs[j].coeff_e * cs[i].coeff_f;
      if (det == 0) continue;
      const Rational de = (cs[i].rhs * cs[j].coeff_f - cs[j].rhs * cs[i].coeff_f) / det;
      const Rational df = (cs[i].coeff_e * cs[j].rhs - cs[j].coeff_e * cs[i].rhs) / det;
      bool feasible = true;
      for (const auto& c : cs) {
        if (!c.satisfied(de, df)) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      const Rational obj = de + df;
      if (!found || obj < best_obj) {
        found = true;
        best_e = de;
        best_f = df;
        best_obj = obj;
      }
    }
  }
  if (!found) throw InfeasibleError("delivery-time program is infeasible");

  LpSolution sol;
  sol.point = NdtPoint::serial(best_f, best_e);
  for (const auto& c : cs)
    if (c.tight(best_e, best_f)) sol.active.push_back(c.tag);
  return sol;
}

}  // namespace detail

// Converse for serial fronthaul-then-edge operation. With r = 0 the caches
// must collectively hold the library (mu >= 1/M), otherwise no finite
// delivery time exists and InfeasibleError is raised.
inline LpSolution lp_lower_bound(const SystemParams& p) {
  p.validate();
  if (p.r == 0 && p.mu < p.inverse_m())
    throw InfeasibleError("cache-only operation requires mu >= 1/M");
  return detail::solve_min_total(lp_constraints(p));
}

// Cache-only converse (r = 0): max over l in [1 : min(M,K)] of
// (K - (M-l)(K-l) mu) / l, floored at one by the edge-time constraint.
inline Rational cache_only_lower_bound(const SystemParams& p) {
  p.validate();
  if (p.mu < p.inverse_m()) throw OutOfRangeError("cache-only operation requires mu >= 1/M");
  Rational best(1);
  for (int l = 1; l <= p.min_mk(); ++l) {
    Rational term =
        (Rational(p.user_count) - Rational(BigInt(p.en_count - l) * (p.user_count - l)) * p.mu) / l;
    if (term > best) best = term;
  }
  return best;
}

// Cloud-only converse (mu = 0): K/min(M,K) + K/(M r).
inline Rational cloud_only_lower_bound(const SystemParams& p) {
  p.validate();
  if (p.mu != 0) throw std::invalid_argument("cloud-only bound requires mu = 0");
  if (p.r == 0) throw InfeasibleError("cloud-only operation requires positive fronthaul rate");
  return Rational(p.user_count, p.min_mk()) + Rational(p.user_count) / (Rational(p.en_count) * p.r);
}

// Converse for pipelined operation: max over l of
// (K - (M-l)(K-l) mu) / (l + (M-l) r), floored at one. With r = 0 pipelining
// buys nothing and the cache-only converse applies unchanged.
inline Rational pipelined_lower_bound(const SystemParams& p) {
  p.validate();
  if (p.r == 0) return cache_only_lower_bound(p);
  Rational best(1);
  for (int l = 0; l <= p.min_mk(); ++l) {
    Rational num =
        Rational(p.user_count) - Rational(BigInt(p.en_count - l) * (p.user_count - l)) * p.mu;
    Rational den = Rational(l) + Rational(p.en_count - l) * p.r;
    Rational term = num / den;
    if (term > best) best = term;
  }
  return best;
}

// Lower bound from a nonnegative combination of the constraints indexed l-1
// and l: alpha * row(l-1) + beta * row(l). Sound only when the combined
// coefficients on delta_e and delta_f are both at most one, so that the
// combination is dominated by delta_e + delta_f; otherwise InvalidWeightsError.
inline Rational weighted_combination_bound(const SystemParams& p, int ell, const Rational& alpha,
                                           const Rational& beta) {
  p.validate();
  if (ell < 1 || ell > p.min_mk()) throw OutOfRangeError("combination index out of range");
  if (alpha < 0 || beta < 0) throw InvalidWeightsError("weights must be nonnegative");
  const Rational coeff_e = alpha * (ell - 1) + beta * ell;
  const Rational coeff_f = (alpha * (p.en_count - ell + 1) + beta * (p.en_count - ell)) * p.r;
  if (coeff_e > 1 || coeff_f > 1)
    throw InvalidWeightsError("combined coefficients exceed one; the result would not bound the total");
  const Rational rhs_prev = Rational(p.user_count) -
                            Rational(BigInt(p.en_count - ell + 1) * (p.user_count - ell + 1)) * p.mu;
  const Rational rhs_cur =
      Rational(p.user_count) - Rational(BigInt(p.en_count - ell) * (p.user_count - ell)) * p.mu;
  return alpha * rhs_prev + beta * rhs_cur;
}

// Converse variant for caching policies allowed to code across files: the
// right-hand side of the l-family weakens to K - (M-l) N mu. Never exceeds
// the per-file bound since N >= K.
inline LpSolution interfile_coding_lower_bound(const SystemParams& p) {
  p.validate();
  auto cs = lp_constraints(p);
  for (int l = 0; l <= p.min_mk(); ++l)
    cs[l].rhs = Rational(p.user_count) -
                Rational(BigInt(p.en_count - l) * p.library_size) * p.mu;
  LpSolution coded = detail::solve_min_total(cs);
  if (!(p.r == 0 && p.mu < p.inverse_m())) {
    if (coded.point.delta > lp_lower_bound(p).point.delta)
      throw std::logic_error("inter-file coding bound exceeded the per-file bound");
  }
  return coded;
}

}  // namespace fran
