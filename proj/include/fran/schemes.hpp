// schemes.hpp - Achievable delivery times and the file-splitting compositors.
//
// Constituent schemes, given at the degrees-of-freedom abstraction:
//   CaZf  - cache-aided cooperation: every node holds the content and joint
//           zero-forcing serves K users at sum-DoF min(M, K). Needs mu = 1.
//   CaIa  - cache-aided coordination: disjoint per-node fragments delivered
//           over the M x K cross channel at sum-DoF MK/(M+K-1). Needs mu = 1/M.
//   ClSf  - cloud-aided soft transfer: the cloud precodes, quantizes each
//           baseband sample to log2(P) bits and streams samples over the
//           fronthaul; with M > K, combinations of K nodes time-share the
//           channel so each node only carries a K/M share of the samples.
//   ClHf  - cloud-aided hard transfer (reference only): raw bits on the
//           fronthaul feeding either the ZF or the cross-channel edge scheme.
//
// Mixtures split every file between schemes and share the cache budget in
// proportion; serial delivery adds the pieces' fronthaul and edge times,
// pipelined block-Markov delivery is limited by the larger of the two sums.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fran/bounds.hpp"
#include "fran/errors.hpp"
#include "fran/model.hpp"
#include "fran/rational.hpp"

namespace fran {

enum class SchemeKind { CaZf, CaIa, ClHfZf, ClHfIa, ClSf, Composite };

inline std::string to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::CaZf: return "ca-zf";
    case SchemeKind::CaIa: return "ca-ia";
    case SchemeKind::ClHfZf: return "cl-hf-zf";
    case SchemeKind::ClHfIa: return "cl-hf-ia";
    case SchemeKind::ClSf: return "cl-sf";
    default: return "composite";
  }
}

// One constituent of a file split: `fraction` of every file is handled by
// `scheme`, which needs `cache_use` of per-node cache for its share.
struct SplitPart {
  SchemeKind scheme;
  Rational fraction;
  Rational cache_use;
  NdtPoint point;
};

struct FileSplit {
  std::vector<SplitPart> parts;

  Rational total_fraction() const {
    Rational sum(0);
    for (const auto& p : parts) sum += p.fraction;
    return sum;
  }
  // Weighted cache usage; feasibility requires this to equal the system mu.
  Rational cache_usage() const {
    Rational sum(0);
    for (const auto& p : parts) sum += p.fraction * p.cache_use;
    return sum;
  }
};

struct SchemeNdt {
  SchemeKind scheme = SchemeKind::Composite;
  Mode mode = Mode::Serial;
  NdtPoint point;
  FileSplit split;
};

namespace detail {

inline Rational edge_zf(const SystemParams& p) { return Rational(p.user_count, p.min_mk()); }
inline Rational edge_ia(const SystemParams& p) {
  return Rational(p.en_count + p.user_count - 1, p.en_count);
}
inline Rational fronthaul_soft(const SystemParams& p) {
  return Rational(p.user_count) / (Rational(p.en_count) * p.r);
}

inline NdtPoint ca_zf_point(const SystemParams& p) { return NdtPoint::serial(0, edge_zf(p)); }
inline NdtPoint ca_ia_point(const SystemParams& p) { return NdtPoint::serial(0, edge_ia(p)); }
inline NdtPoint cl_sf_point(const SystemParams& p) {
  return NdtPoint::serial(fronthaul_soft(p), edge_zf(p));
}

inline SchemeNdt single(SchemeKind kind, Mode mode, NdtPoint point, Rational cache_use) {
  SchemeNdt s;
  s.scheme = kind;
  s.mode = mode;
  s.point = point;
  s.split.parts = {{kind, Rational(1), std::move(cache_use), point}};
  return s;
}

}  // namespace detail

inline NdtPoint ndt_ca_zf(const SystemParams& p) {
  p.validate();
  if (p.mu < 1) throw CacheTooSmallError("cooperative zero-forcing needs the full library cached (mu = 1)");
  return detail::ca_zf_point(p);
}

inline NdtPoint ndt_ca_ia(const SystemParams& p) {
  p.validate();
  if (p.mu < p.inverse_m())
    throw CacheTooSmallError("coordinated delivery needs the library cached collectively (mu >= 1/M)");
  return detail::ca_ia_point(p);
}

// Hard transfer: better of shipping every requested file to every node (then
// ZF) or shipping disjoint fragments (then cross-channel coordination). Ties
// go to the coordination branch, which wins for all smaller rates.
inline NdtPoint ndt_cl_hf(const SystemParams& p) {
  p.validate();
  if (p.r == 0) throw InfeasibleError("hard transfer requires positive fronthaul rate");
  const NdtPoint zf = NdtPoint::serial(Rational(p.user_count) / p.r, detail::edge_zf(p));
  const NdtPoint ia = NdtPoint::serial(detail::fronthaul_soft(p), detail::edge_ia(p));
  return ia.delta <= zf.delta ? ia : zf;
}

inline NdtPoint ndt_cl_sf(const SystemParams& p) {
  p.validate();
  if (p.r == 0) throw InfeasibleError("soft transfer requires positive fronthaul rate");
  return detail::cl_sf_point(p);
}

// Serial mixture: fractions must sum to one and the weighted cache usage may
// not exceed the budget mu; fronthaul and edge times add per component.
inline SchemeNdt compose_serial(const SystemParams& p, const std::vector<SplitPart>& parts) {
  p.validate();
  Rational frac_sum(0), cache_sum(0), df(0), de(0);
  for (const auto& part : parts) {
    if (part.fraction < 0 || part.fraction > 1) throw OutOfRangeError("split fraction outside [0, 1]");
    frac_sum += part.fraction;
    cache_sum += part.fraction * part.cache_use;
    df += part.fraction * part.point.delta_f;
    de += part.fraction * part.point.delta_e;
  }
  if (frac_sum != 1) throw OutOfRangeError("split fractions must sum to one");
  if (cache_sum > p.mu) throw BudgetExceededError("weighted cache usage exceeds the cache budget");

  SchemeNdt out;
  out.mode = Mode::Serial;
  out.point = NdtPoint::serial(df, de);
  for (const auto& part : parts)
    if (part.fraction > 0) out.split.parts.push_back(part);
  out.scheme = out.split.parts.size() == 1 ? out.split.parts.front().scheme : SchemeKind::Composite;
  return out;
}

// Block-Markov mixture of two serial policies: alpha of every block follows
// the first, the rest the second; in the many-block limit the delivery time
// is the larger of the weighted fronthaul and weighted edge times.
inline Rational compose_pipelined(const NdtPoint& first, const NdtPoint& second, const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw OutOfRangeError("split fraction outside [0, 1]");
  const Rational df = alpha * first.delta_f + (1 - alpha) * second.delta_f;
  const Rational de = alpha * first.delta_e + (1 - alpha) * second.delta_e;
  return df > de ? df : de;
}

// Best serial mixture for the regime of (mu, r):
//   low cache, low fronthaul:   mu*M coordinated + rest soft transfer
//   high cache, low fronthaul:  cache-only mix of coordination and cooperation
//   high fronthaul (r >= r_th): mu cooperative + rest soft transfer
// At r = r_th both eligible branches agree exactly (checked); the closed
// bracket assigns the point to the high-fronthaul branch.
inline SchemeNdt achievable_serial(const SystemParams& p) {
  p.validate();
  const Thresholds t = thresholds(p);
  const Rational inv_m = p.inverse_m();

  auto low_cache_mix = [&]() {
    SystemParams ia = p;
    ia.mu = inv_m;
    SystemParams sf = p;
    sf.mu = 0;
    return compose_serial(p, {{SchemeKind::CaIa, p.mu * p.en_count, inv_m, detail::ca_ia_point(ia)},
                              {SchemeKind::ClSf, 1 - p.mu * p.en_count, Rational(0), detail::cl_sf_point(sf)}});
  };
  auto cache_only_mix = [&]() {
    if (p.en_count == 1) {
      // mu >= 1/M forces mu = 1 here; the mixture degenerates to cooperation.
      return compose_serial(p, {{SchemeKind::CaZf, Rational(1), Rational(1), detail::ca_zf_point(p)}});
    }
    const Rational ia_frac = Rational(p.en_count) * (1 - p.mu) / (p.en_count - 1);
    const Rational zf_frac = (p.mu * p.en_count - 1) / (p.en_count - 1);
    SystemParams ia = p;
    ia.mu = inv_m;
    return compose_serial(p, {{SchemeKind::CaIa, ia_frac, inv_m, detail::ca_ia_point(ia)},
                              {SchemeKind::CaZf, zf_frac, Rational(1), detail::ca_zf_point(p)}});
  };
  auto high_fronthaul_mix = [&]() {
    SystemParams sf = p;
    sf.mu = 0;
    return compose_serial(p, {{SchemeKind::CaZf, p.mu, Rational(1), detail::ca_zf_point(p)},
                              {SchemeKind::ClSf, 1 - p.mu, Rational(0), detail::cl_sf_point(sf)}});
  };

  if (p.r == 0) {
    if (p.mu < inv_m) throw InfeasibleError("cache-only operation requires mu >= 1/M");
    return cache_only_mix();
  }
  if (t.high_fronthaul(p.r)) {
    SchemeNdt chosen = high_fronthaul_mix();
    if (p.r == *t.r_th) {
      const SchemeNdt other = p.mu >= inv_m ? cache_only_mix() : low_cache_mix();
      if (other.point.delta != chosen.point.delta)
        throw std::logic_error("regime branches disagree at the fronthaul threshold");
    }
    return chosen;
  }
  return p.mu >= inv_m ? cache_only_mix() : low_cache_mix();
}

// Best block-Markov mixture for pipelined operation. Below mu1 the fronthaul
// stream of the coordination/soft-transfer mix is the bottleneck; above mu2
// the cooperative mix already runs at the ideal edge time; in between, files
// are split between the two threshold mixtures, whose fronthaul and edge
// times are balanced, so the maximum degenerates to the weighted value.
inline SchemeNdt achievable_pipelined(const SystemParams& p) {
  p.validate();
  if (p.r == 0) throw InfeasibleError("pipelining requires positive fronthaul rate; use the serial cache-only path");
  const Thresholds t = thresholds(p);
  const Rational inv_m = p.inverse_m();

  SystemParams ia = p;
  ia.mu = inv_m;
  SystemParams sf = p;
  sf.mu = 0;
  const NdtPoint ia_pt = detail::ca_ia_point(ia);
  const NdtPoint zf_pt = detail::ca_zf_point(p);
  const NdtPoint sf_pt = detail::cl_sf_point(sf);

  auto coordination_mix = [&](const Rational& mu) {
    const Rational alpha = mu * p.en_count;
    SchemeNdt s;
    s.mode = Mode::Pipelined;
    s.point = NdtPoint::pipelined(alpha * ia_pt.delta_f + (1 - alpha) * sf_pt.delta_f,
                                  alpha * ia_pt.delta_e + (1 - alpha) * sf_pt.delta_e);
    s.split.parts = {{SchemeKind::CaIa, alpha, inv_m, ia_pt}, {SchemeKind::ClSf, 1 - alpha, Rational(0), sf_pt}};
    s.scheme = SchemeKind::Composite;
    return s;
  };
  auto cooperation_mix = [&](const Rational& mu) {
    SchemeNdt s;
    s.mode = Mode::Pipelined;
    s.point = NdtPoint::pipelined(mu * zf_pt.delta_f + (1 - mu) * sf_pt.delta_f,
                                  mu * zf_pt.delta_e + (1 - mu) * sf_pt.delta_e);
    s.split.parts = {{SchemeKind::CaZf, mu, Rational(1), zf_pt}, {SchemeKind::ClSf, 1 - mu, Rational(0), sf_pt}};
    s.scheme = SchemeKind::Composite;
    return s;
  };

  const RegimeLabel label = classify_regime(p, Mode::Pipelined);
  if (label.band == PipelinedBand::Cooperation) {
    SchemeNdt s = cooperation_mix(p.mu);
    if (s.point.delta != detail::edge_zf(p)) throw std::logic_error("cooperation band is not edge-limited");
    return s;
  }
  if (label.band == PipelinedBand::Coordination) {
    SchemeNdt s = coordination_mix(p.mu);
    if (s.point.delta != s.point.delta_f) throw std::logic_error("coordination band is not fronthaul-limited");
    return s;
  }

  // File split between the mixtures pinned at mu1 and mu2. Both endpoints
  // balance fronthaul against edge, so any blend of them stays balanced.
  const Rational lambda = (t.mu2 - p.mu) / (t.mu2 - t.mu1);
  const SchemeNdt lo = coordination_mix(t.mu1);
  const SchemeNdt hi = cooperation_mix(t.mu2);
  SchemeNdt s;
  s.mode = Mode::Pipelined;
  s.scheme = SchemeKind::Composite;
  s.point = NdtPoint::pipelined(lambda * lo.point.delta_f + (1 - lambda) * hi.point.delta_f,
                                lambda * lo.point.delta_e + (1 - lambda) * hi.point.delta_e);
  auto add_part = [&](const SplitPart& part, const Rational& scale) {
    if (scale * part.fraction == 0) return;
    for (auto& existing : s.split.parts) {
      if (existing.scheme == part.scheme && existing.cache_use == part.cache_use) {
        existing.fraction += scale * part.fraction;
        return;
      }
    }
    s.split.parts.push_back({part.scheme, scale * part.fraction, part.cache_use, part.point});
  };
  for (const auto& part : lo.split.parts) add_part(part, lambda);
  for (const auto& part : hi.split.parts) add_part(part, 1 - lambda);
  if (s.split.cache_usage() != p.mu) throw std::logic_error("file split breaks the cache budget");
  return s;
}

}  // namespace fran
