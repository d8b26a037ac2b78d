// model.hpp - System parameters, delivery-time points, regime thresholds and
// regime classification shared by every other component.
//
// A system is described by (M, K, N, mu, r): M edge nodes each caching a
// fraction mu of an N-file library serve K users, with per-node fronthaul
// links of normalized rate r. All derived quantities are exact rationals.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fran/errors.hpp"
#include "fran/rational.hpp"

namespace fran {

struct SystemParams {
  int en_count = 1;      // M
  int user_count = 1;    // K
  int library_size = 1;  // N, carried for cache budgets; N >= K is required
  Rational mu;           // fractional cache size, in [0, 1]
  Rational r;            // fronthaul rate, >= 0

  SystemParams() = default;
  SystemParams(int m, int k, int n, Rational cache, Rational fronthaul)
      : en_count(m), user_count(k), library_size(n), mu(std::move(cache)), r(std::move(fronthaul)) {
    validate();
  }

  void validate() const {
    if (en_count < 1 || user_count < 1) throw std::invalid_argument("need at least one edge node and one user");
    if (library_size < user_count) throw std::invalid_argument("library must hold at least one file per user");
    if (mu < 0 || mu > 1) throw std::invalid_argument("fractional cache size must lie in [0, 1]");
    if (r < 0) throw std::invalid_argument("fronthaul rate must be nonnegative");
  }

  int min_mk() const { return en_count < user_count ? en_count : user_count; }
  int max_mk() const { return en_count > user_count ? en_count : user_count; }
  Rational inverse_m() const { return Rational(1, en_count); }
};

// Fronthaul/edge delivery times normalized by the ideal single-user system.
// Serial operation adds the two; pipelined operation is limited by the larger.
struct NdtPoint {
  Rational delta_f;  // fronthaul component, >= 0
  Rational delta_e;  // edge component, >= 1
  Rational delta;    // total

  static NdtPoint serial(Rational df, Rational de) {
    NdtPoint p{std::move(df), std::move(de), {}};
    p.delta = p.delta_f + p.delta_e;
    p.check();
    return p;
  }
  static NdtPoint pipelined(Rational df, Rational de) {
    NdtPoint p{std::move(df), std::move(de), {}};
    p.delta = p.delta_f > p.delta_e ? p.delta_f : p.delta_e;
    p.check();
    return p;
  }

 private:
  void check() const {
    if (delta_f < 0 || delta_e < 1 || delta < 1) throw std::logic_error("malformed delivery-time point");
  }
};

enum class Mode { Serial, Pipelined };

inline std::string to_string(Mode m) { return m == Mode::Serial ? "serial" : "pipelined"; }

enum class CacheRegime { LowCache, HighCache };
enum class FronthaulRegime { CacheOnly, LowFronthaul, HighFronthaul };

// Pipelined delivery selects among three compositions as mu crosses the
// thresholds mu1 and mu2; serial delivery does not use this field.
enum class PipelinedBand { None, Coordination, FileSplit, Cooperation };

struct RegimeLabel {
  CacheRegime cache_regime = CacheRegime::LowCache;
  FronthaulRegime fronthaul_regime = FronthaulRegime::CacheOnly;
  Mode mode = Mode::Serial;
  PipelinedBand band = PipelinedBand::None;
};

inline std::string to_string(CacheRegime c) {
  return c == CacheRegime::LowCache ? "low-cache" : "high-cache";
}
inline std::string to_string(FronthaulRegime f) {
  switch (f) {
    case FronthaulRegime::CacheOnly: return "cache-only";
    case FronthaulRegime::LowFronthaul: return "low-fronthaul";
    default: return "high-fronthaul";
  }
}
inline std::string to_string(PipelinedBand b) {
  switch (b) {
    case PipelinedBand::None: return "none";
    case PipelinedBand::Coordination: return "coordination";
    case PipelinedBand::FileSplit: return "file-split";
    default: return "cooperation";
  }
}

// Regime thresholds. r_th separates the serial low/high fronthaul regimes and
// is unbounded when min(M, K) == 1: with a single edge node or single user,
// cooperation and coordination collapse to the same point-to-point scheme, so
// the high-fronthaul composition never wins and every r counts as low.
struct Thresholds {
  std::optional<Rational> r_th;  // empty means +infinity
  Rational mu1;
  Rational mu2;

  bool high_fronthaul(const Rational& r) const { return r_th.has_value() && r >= *r_th; }
};

inline Thresholds thresholds(const SystemParams& p) {
  p.validate();
  const int m = p.min_mk();
  Thresholds t;
  if (m > 1) t.r_th = Rational(BigInt(p.user_count) * (p.en_count - 1), BigInt(p.en_count) * (m - 1));
  t.mu1 = positive_part(Rational(p.user_count) - Rational(p.max_mk()) * p.r) /
          (Rational(BigInt(p.user_count) * p.en_count) + Rational(p.en_count) * p.r * (m - 1));
  t.mu2 = positive_part(Rational(1) - Rational(p.en_count) * p.r / m);
  if (!(t.mu1 <= t.mu2 && t.mu2 <= 1)) throw std::logic_error("threshold ordering violated");
  return t;
}

// Total over [0,1] x [0,inf): every (mu, r) gets exactly one label. Boundary
// points go to the closed side: mu = 1/M is high-cache, r = r_th is
// high-fronthaul, mu = mu1 stays in the coordination band and mu = mu2 in the
// cooperation band. Both branch formulas agree at each of these boundaries.
inline RegimeLabel classify_regime(const SystemParams& p, Mode mode) {
  p.validate();
  RegimeLabel label;
  label.mode = mode;
  label.cache_regime = p.mu >= p.inverse_m() ? CacheRegime::HighCache : CacheRegime::LowCache;
  if (p.r == 0) {
    label.fronthaul_regime = FronthaulRegime::CacheOnly;
    return label;
  }
  const Thresholds t = thresholds(p);
  if (mode == Mode::Serial) {
    label.fronthaul_regime =
        t.high_fronthaul(p.r) ? FronthaulRegime::HighFronthaul : FronthaulRegime::LowFronthaul;
    return label;
  }
  if (p.mu >= t.mu2) {
    label.fronthaul_regime = FronthaulRegime::HighFronthaul;
    label.band = PipelinedBand::Cooperation;
  } else if (p.mu <= t.mu1) {
    label.fronthaul_regime = FronthaulRegime::LowFronthaul;
    label.band = PipelinedBand::Coordination;
  } else {
    label.fronthaul_regime = FronthaulRegime::LowFronthaul;
    label.band = PipelinedBand::FileSplit;
  }
  return label;
}

}  // namespace fran
