// analysis.hpp - Optimality certification: exact minimum detection, the
// multiplicative gap between achievable values and converses, serial versus
// pipelined comparisons, and convexity verification over cache-size grids.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fran/bounds.hpp"
#include "fran/model.hpp"
#include "fran/rational.hpp"
#include "fran/schemes.hpp"

namespace fran {

enum class CertificateStatus { Exact, GapBounded };

inline std::string to_string(CertificateStatus s) {
  return s == CertificateStatus::Exact ? "exact" : "gap-bounded";
}

// Exact status is granted only when the parameters verifiably satisfy one of
// the characterized regimes; a numerical coincidence of the two bounds stays
// gap-bounded with gap one, so the certificate never overstates what is
// proved. The witness names the regime that grants exactness, or "bound-pair"
// for gap-bounded results.
struct OptimalityCertificate {
  Rational value;      // exact minimum, or the achievable value when gap-bounded
  CertificateStatus status = CertificateStatus::GapBounded;
  Rational gap;        // achievable / lower bound, in [1, 2]
  std::string witness;
  Rational lower;
  Rational achievable;
};

inline Rational multiplicative_gap(const SystemParams& p, Mode mode) {
  p.validate();
  Rational ach, low;
  if (mode == Mode::Serial || p.r == 0) {
    // With r = 0 pipelined and serial policies coincide (nothing to overlap).
    ach = achievable_serial(p).point.delta;
    low = lp_lower_bound(p).point.delta;
  } else {
    ach = achievable_pipelined(p).point.delta;
    low = pipelined_lower_bound(p);
  }
  const Rational gap = ach / low;
  if (gap < 1 || gap > 2) throw std::logic_error("multiplicative gap left [1, 2]");
  return gap;
}

namespace detail {

inline OptimalityCertificate exact_certificate(Rational value, std::string witness) {
  OptimalityCertificate c;
  c.value = value;
  c.status = CertificateStatus::Exact;
  c.gap = 1;
  c.witness = std::move(witness);
  c.lower = value;
  c.achievable = std::move(value);
  return c;
}

inline OptimalityCertificate bounded_certificate(const SystemParams& p, Mode mode) {
  OptimalityCertificate c;
  c.status = CertificateStatus::GapBounded;
  c.witness = "bound-pair";
  if (mode == Mode::Serial || p.r == 0) {
    c.lower = lp_lower_bound(p).point.delta;
    c.achievable = achievable_serial(p).point.delta;
  } else {
    c.lower = pipelined_lower_bound(p);
    c.achievable = achievable_pipelined(p).point.delta;
  }
  c.value = c.achievable;
  c.gap = c.achievable / c.lower;
  if (c.gap < 1 || c.gap > 2) throw std::logic_error("multiplicative gap left [1, 2]");
  return c;
}

inline OptimalityCertificate exact_ndt_serial(const SystemParams& p) {
  const Rational inv_m = p.inverse_m();
  const int m = p.min_mk();
  if (p.r == 0) {
    if (p.mu < inv_m) throw InfeasibleError("cache-only operation requires mu >= 1/M");
    if (p.mu == inv_m)
      return exact_certificate(Rational(p.en_count + p.user_count - 1, p.en_count), "cache-only-corner");
    if (p.mu == 1) return exact_certificate(Rational(p.user_count, m), "cache-only-corner");
    if (p.en_count == 2 && p.user_count == 2) return exact_certificate(2 - p.mu, "two-by-two");
    return bounded_certificate(p, Mode::Serial);
  }
  if (p.mu == 0) {
    return exact_certificate(Rational(p.user_count, m) + Rational(p.user_count) / (Rational(p.en_count) * p.r),
                             "cloud-only");
  }
  // Small cache and small fronthaul with at least as many users as nodes:
  // the mixture of coordination and soft transfer is optimal.
  const bool rate_ok = p.en_count == 1 || p.r <= Rational(1, p.en_count - 1);
  if (p.en_count <= p.user_count && p.mu <= inv_m && rate_ok) {
    const Rational value = Rational(p.en_count + p.user_count - 1) * p.mu +
                           Rational(p.user_count) * (1 - p.mu * p.en_count) / p.en_count * (1 + 1 / p.r);
    return exact_certificate(value, "low-fronthaul-small-cache");
  }
  if (p.en_count == 2 && p.user_count == 2) {
    if (p.r > 1) return exact_certificate(1 + (1 - p.mu) / p.r, "two-by-two");
    const Rational a = 1 + p.mu + (1 - 2 * p.mu) / p.r;
    const Rational b = 2 - p.mu;
    return exact_certificate(a > b ? a : b, "two-by-two");
  }
  return bounded_certificate(p, Mode::Serial);
}

inline OptimalityCertificate exact_ndt_pipelined(const SystemParams& p) {
  if (p.r == 0) return exact_ndt_serial(p);  // the two models coincide at r = 0
  const Thresholds t = thresholds(p);
  const int m = p.min_mk();
  if (p.mu >= t.mu2) {
    const bool rate_driven = t.mu2 == 0;
    return exact_certificate(Rational(p.user_count, m),
                             rate_driven ? "pipelined-high-fronthaul" : "pipelined-high-cache");
  }
  if (p.mu <= t.mu1) {
    const Rational value =
        (1 - p.mu * p.en_count) * Rational(p.user_count) / (Rational(p.en_count) * p.r);
    return exact_certificate(value, "pipelined-low-cache");
  }
  if (p.en_count == 2 && p.user_count == 2)
    return exact_certificate((2 - p.mu) / (1 + p.r), "two-by-two-pipelined");
  return bounded_certificate(p, Mode::Pipelined);
}

}  // namespace detail

inline OptimalityCertificate exact_ndt(const SystemParams& p, Mode mode) {
  p.validate();
  return mode == Mode::Serial ? detail::exact_ndt_serial(p) : detail::exact_ndt_pipelined(p);
}

// Serial achievable over pipelined achievable; pipelining can save at most a
// factor of two. The converse-side relation (pipelined lower bound at least
// half the serial one) is checked alongside.
inline Rational pipelined_serial_ratio(const SystemParams& p) {
  p.validate();
  const Rational serial = achievable_serial(p).point.delta;
  if (p.r == 0) return 1;
  const Rational pipelined = achievable_pipelined(p).point.delta;
  const Rational ratio = serial / pipelined;
  if (ratio < 1 || ratio > 2) throw std::logic_error("serial/pipelined ratio left [1, 2]");
  if (pipelined_lower_bound(p) < lp_lower_bound(p).point.delta / 2)
    throw std::logic_error("pipelined converse fell below half the serial converse");
  return ratio;
}

struct ConvexityViolation {
  std::string curve;  // "achievable" or "lower"
  Rational mu_left, mu_mid, mu_right;
};

struct ConvexityReport {
  std::vector<Rational> grid;
  std::vector<Rational> achievable;
  std::vector<Rational> lower;
  std::vector<ConvexityViolation> violations;
  bool passed = false;
};

// Chord test on every consecutive grid triple, exact arithmetic: the middle
// value may not exceed the chord through its neighbours.
inline ConvexityReport verify_convexity(const SystemParams& base, std::vector<Rational> mu_grid, Mode mode) {
  std::sort(mu_grid.begin(), mu_grid.end());
  mu_grid.erase(std::unique(mu_grid.begin(), mu_grid.end()), mu_grid.end());
  if (mu_grid.size() < 3)
    throw std::invalid_argument("convexity check needs at least three distinct grid points");
  ConvexityReport report;
  report.grid = mu_grid;
  for (const Rational& mu : mu_grid) {
    SystemParams p = base;
    p.mu = mu;
    p.validate();
    if (mode == Mode::Serial || p.r == 0) {
      report.achievable.push_back(achievable_serial(p).point.delta);
      report.lower.push_back(lp_lower_bound(p).point.delta);
    } else {
      report.achievable.push_back(achievable_pipelined(p).point.delta);
      report.lower.push_back(pipelined_lower_bound(p));
    }
  }
  auto check_curve = [&](const std::vector<Rational>& values, const std::string& name) {
    for (std::size_t i = 0; i + 2 < values.size(); ++i) {
      const Rational &a = report.grid[i], &b = report.grid[i + 1], &c = report.grid[i + 2];
      const Rational chord = ((c - b) * values[i] + (b - a) * values[i + 2]) / (c - a);
      if (values[i + 1] > chord) report.violations.push_back({name, a, b, c});
    }
  };
  check_curve(report.achievable, "achievable");
  check_curve(report.lower, "lower");
  report.passed = report.violations.empty();
  return report;
}

}  // namespace fran
