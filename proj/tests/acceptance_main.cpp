// Acceptance suite: ten end-to-end criteria, one pass/fail line each.
// Every expected value is either a frozen closed form evaluated here,
// independently of the engine's code paths, or an exact identity; tolerances
// are pinned in this file (exact equality unless a criterion names a bound).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fran/fran.hpp"

using namespace fran;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// ---- independent closed forms -------------------------------------------

Rational two_by_two_serial(const Rational& mu, const Rational& r) {
  if (r == 0) return 2 - mu;
  if (r > 1) return 1 + (1 - mu) / r;
  const Rational a = 1 + mu + (1 - 2 * mu) / r;
  const Rational b = 2 - mu;
  return a > b ? a : b;
}

Rational two_by_two_pipelined(const Rational& mu, const Rational& r) {
  if (r >= 1) return Rational(1);
  const Rational mu1 = (1 - r) / (2 + r);
  const Rational mu2 = 1 - r;
  if (mu <= mu1) return (1 - 2 * mu) / r;
  if (mu <= mu2) return (2 - mu) / (1 + r);
  return Rational(1);
}

Rational small_cache_low_rate(int m, int k, const Rational& mu, const Rational& r) {
  return Rational(m + k - 1) * mu + Rational(k) * (1 - mu * m) / m * (1 + 1 / r);
}

// ---- shared randomized grid for criteria 4-6 -----------------------------

struct GridValue {
  SystemParams p;
  Rational serial_lower, serial_ach, pipe_lower, pipe_ach, soft, hard;
};

std::vector<GridValue> g_grid;

// ---- criteria ------------------------------------------------------------

Outcome criterion1() {
  Outcome out;
  int points = 0;
  for (const char* r_text : {"1/4", "1/2", "1", "3/2"}) {
    const Rational r = parse_rational(r_text);
    for (int i = 0; i <= 20; ++i) {
      const Rational mu(i, 20);
      const SystemParams p(2, 2, 2, mu, r);
      const Rational expect = two_by_two_serial(mu, r);
      if (lp_lower_bound(p).point.delta != expect)
        out.fail("lower mismatch at mu=" + format_rational(mu) + " r=" + r_text);
      if (achievable_serial(p).point.delta != expect)
        out.fail("achievable mismatch at mu=" + format_rational(mu) + " r=" + r_text);
      ++points;
    }
  }
  out.detail = std::to_string(points) + " grid points, exact equality";
  return out;
}

Outcome criterion2() {
  Outcome out;
  int points = 0;
  for (const char* r_text : {"1/4", "1/2", "1", "3/2"}) {
    const Rational r = parse_rational(r_text);
    std::vector<Rational> grid;
    for (int i = 0; i <= 20; ++i) grid.emplace_back(i, 20);
    if (r < 1) {
      grid.push_back((1 - r) / (2 + r));  // mu1
      grid.push_back(1 - r);              // mu2
    }
    for (const Rational& mu : grid) {
      const SystemParams p(2, 2, 2, mu, r);
      const Rational expect = two_by_two_pipelined(mu, r);
      if (pipelined_lower_bound(p) != expect)
        out.fail("lower mismatch at mu=" + format_rational(mu) + " r=" + r_text);
      if (achievable_pipelined(p).point.delta != expect)
        out.fail("achievable mismatch at mu=" + format_rational(mu) + " r=" + r_text);
      ++points;
    }
  }
  out.detail = std::to_string(points) + " grid points incl. mu1/mu2, exact equality";
  return out;
}

Outcome criterion3() {
  Outcome out;
  int points = 0;
  auto expect_equal = [&](const SystemParams& p, const Rational& expect, const char* which) {
    if (lp_lower_bound(p).point.delta != expect || achievable_serial(p).point.delta != expect)
      out.fail(std::string(which) + " mismatch at M=" + std::to_string(p.en_count) +
               " K=" + std::to_string(p.user_count) + " mu=" + format_rational(p.mu) +
               " r=" + format_rational(p.r));
    ++points;
  };
  for (int m = 1; m <= 6; ++m) {
    for (int k = 1; k <= 6; ++k) {
      // Cache-only corners: coordination at mu = 1/M, cooperation at mu = 1.
      expect_equal(SystemParams(m, k, k, Rational(1, m), Rational(0)), Rational(m + k - 1, m),
                   "cache-only corner");
      expect_equal(SystemParams(m, k, k, Rational(1), Rational(0)), Rational(k, std::min(m, k)),
                   "cache-only corner");
      // Cloud-only.
      for (const char* r_text : {"1/4", "1/2", "1", "2", "4"}) {
        const Rational r = parse_rational(r_text);
        expect_equal(SystemParams(m, k, k, Rational(0), r),
                     Rational(k, std::min(m, k)) + Rational(k) / (Rational(m) * r), "cloud-only");
      }
      // Small cache, small rate, M <= K.
      if (m <= k) {
        for (int i = 0; i <= 4; ++i) {
          const Rational mu = Rational(i, 4) * Rational(1, m);
          for (int j = 1; j <= 4; ++j) {
            const Rational r = m == 1 ? Rational(j) : Rational(1, m - 1) * Rational(j, 4);
            expect_equal(SystemParams(m, k, k, mu, r), small_cache_low_rate(m, k, mu, r),
                         "small-cache low-rate");
          }
        }
      }
    }
  }
  out.detail = std::to_string(points) + " characterized tuples, exact equality";
  return out;
}

Outcome criterion4() {
  Outcome out;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> mk(1, 8), mu_num(0, 24), r_num(1, 32);
  g_grid.clear();
  g_grid.reserve(10000);
  for (int i = 0; i < 10000; ++i) {
    GridValue v{SystemParams(mk(rng), mk(rng), 8, Rational(mu_num(rng), 24), Rational(r_num(rng), 8)),
                {}, {}, {}, {}, {}, {}};
    v.serial_lower = lp_lower_bound(v.p).point.delta;
    v.serial_ach = achievable_serial(v.p).point.delta;
    v.pipe_lower = pipelined_lower_bound(v.p);
    v.pipe_ach = achievable_pipelined(v.p).point.delta;
    v.soft = ndt_cl_sf(v.p).delta;
    v.hard = ndt_cl_hf(v.p).delta;
    g_grid.push_back(std::move(v));
  }
  int violations = 0;
  for (const auto& v : g_grid) {
    const Rational serial_gap = v.serial_ach / v.serial_lower;
    const Rational pipe_gap = v.pipe_ach / v.pipe_lower;
    if (serial_gap < 1 || serial_gap > 2 || pipe_gap < 1 || pipe_gap > 2) ++violations;
  }
  if (violations > 0) out.fail(std::to_string(violations) + " gap violations");
  out.detail = "10000 tuples, serial and pipelined gaps in [1, 2], " + std::to_string(violations) +
               " violations";
  return out;
}

Outcome criterion5() {
  Outcome out;
  int violations = 0;
  for (const auto& v : g_grid) {
    if (v.pipe_ach > v.serial_ach) ++violations;
    if (v.pipe_lower < v.serial_lower / 2) ++violations;
  }
  if (violations > 0) out.fail(std::to_string(violations) + " relation violations");
  out.detail = "pipelined <= serial and pipelined lower >= serial lower / 2, " +
               std::to_string(violations) + " violations";
  return out;
}

Outcome criterion6() {
  Outcome out;
  int violations = 0;
  for (const auto& v : g_grid)
    if (v.soft > v.hard) ++violations;
  if (violations > 0) out.fail(std::to_string(violations) + " soft/hard violations");
  // Hard-transfer branch switch at M = K = 3 happens exactly at r = 3.
  const NdtPoint at3 = ndt_cl_hf(SystemParams(3, 3, 3, Rational(0), Rational(3)));
  if (at3.delta != 2) out.fail("branch values at r=3 differ from 2");
  if (ndt_cl_hf(SystemParams(3, 3, 3, Rational(0), Rational(5, 2))).delta != Rational(31, 15))
    out.fail("coordination branch mismatch below the switch");
  if (ndt_cl_hf(SystemParams(3, 3, 3, Rational(0), Rational(7, 2))).delta != Rational(13, 7))
    out.fail("cooperation branch mismatch above the switch");
  out.detail = "soft transfer never loses on the grid; 3x3 branch switch at r=3 exact";
  return out;
}

Outcome criterion7() {
  Outcome out;
  int curves = 0;
  const std::vector<std::pair<int, int>> systems = {{1, 2}, {2, 2}, {2, 3}, {3, 2}, {3, 3},
                                                    {4, 2}, {2, 4}, {4, 4}, {5, 3}, {6, 6}};
  for (const auto& [m, k] : systems) {
    for (const char* r_text : {"0", "1/4", "1/2", "1", "2"}) {
      const Rational r = parse_rational(r_text);
      for (Mode mode : {Mode::Serial, Mode::Pipelined}) {
        if (r == 0 && mode == Mode::Pipelined) continue;
        if (r == 0 && m == 1) continue;  // feasible cache sizes collapse to mu = 1
        std::vector<Rational> grid;
        const Rational lo = r == 0 ? Rational(1, m) : Rational(0);
        for (int i = 0; i <= 20; ++i) grid.push_back(lo + Rational(i, 20) * (1 - lo));
        const ConvexityReport report =
            verify_convexity(SystemParams(m, k, k, Rational(0), r), grid, mode);
        if (!report.passed)
          out.fail("convexity violated at M=" + std::to_string(m) + " K=" + std::to_string(k) +
                   " r=" + r_text + " mode=" + to_string(mode));
        ++curves;
      }
    }
  }
  out.detail = std::to_string(curves) + " curves (21-point grids), midpoint convexity exact";
  return out;
}

Outcome criterion8() {
  Outcome out;
  int serial_tuples = 0, pipelined_tuples = 0;
  for (int m = 1; m <= 4; ++m) {
    for (int k = 1; k <= 4; ++k) {
      std::vector<int> demand(k);
      for (int u = 0; u < k; ++u) demand[u] = u + 1;
      for (const char* mu_text : {"0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"}) {
        for (const char* r_text : {"1/4", "1/2", "1", "2"}) {
          const SystemParams p(m, k, k, parse_rational(mu_text), parse_rational(r_text));
          {
            const long long bits = required_file_bits(p, Mode::Serial);
            const PlacementPlan plan = plan_placement(p, bits);
            const Schedule s = build_serial_schedule(plan, demand, 12);
            const SimulationReport report = verify_schedule(s, plan, demand);
            if (s.counted_ndt(bits) != achievable_serial(p).point.delta)
              out.fail("serial counted value mismatch at M=" + std::to_string(m) +
                       " K=" + std::to_string(k) + " mu=" + mu_text + " r=" + r_text);
            if (!report.all_pass()) out.fail("serial audit failure");
            ++serial_tuples;
          }
          const Rational analytical = achievable_pipelined(p).point.delta;
          for (int blocks : {1, 3, 30}) {
            const long long bits = required_file_bits(p, Mode::Pipelined, blocks);
            const PlacementPlan plan = plan_placement(p, bits, Mode::Pipelined, blocks);
            const Schedule s = build_pipelined_schedule(plan, demand, 12);
            const SimulationReport report = verify_schedule(s, plan, demand);
            if (s.counted_ndt(bits) != Rational(blocks + 1, blocks) * analytical)
              out.fail("pipelined counted value mismatch at M=" + std::to_string(m) +
                       " K=" + std::to_string(k) + " mu=" + mu_text + " r=" + r_text +
                       " B=" + std::to_string(blocks));
            if (!report.all_pass()) out.fail("pipelined audit failure");
            ++pipelined_tuples;
          }
        }
      }
    }
  }
  if (serial_tuples < 200) out.fail("fewer than 200 serial tuples");
  out.detail = std::to_string(serial_tuples) + " serial tuples exact; " +
               std::to_string(pipelined_tuples) + " pipelined builds at (B+1)/B, audits green";
  return out;
}

Outcome criterion9() {
  Outcome out;
  struct Tuple {
    int m, k;
    const char* mu;
    const char* r;
  };
  // Representative of every regime with a bounded cloud share; the finite-SNR
  // penalty multiplies only the soft-transfer component.
  const std::vector<Tuple> tuples = {{2, 2, "1", "1"},      // full caching
                                     {2, 2, "1/2", "1/2"},  // cache-only mixture
                                     {2, 2, "2/5", "1/2"},  // coordination + cloud
                                     {2, 2, "9/20", "3/2"}, // high fronthaul
                                     {3, 2, "1/4", "1"}};   // clustering path
  std::vector<int> ladder;
  for (int e = 10; e <= 40; e += 2) ladder.push_back(e);
  std::ostringstream detail;
  for (const auto& t : tuples) {
    const SystemParams p(t.m, t.k, t.k, parse_rational(t.mu), parse_rational(t.r));
    std::vector<int> demand(t.k);
    for (int u = 0; u < t.k; ++u) demand[u] = u + 1;
    const long long bits = required_file_bits(p, Mode::Serial);
    const SimulationReport report =
        finite_p_convergence(plan_placement(p, bits), demand, ladder);
    if (!report.all_pass()) out.fail("audit failure in convergence run");
    const double target = to_double(achievable_serial(p).point.delta);
    const double last = report.convergence.back().second;
    if (std::abs(last - target) > 0.05)
      out.fail("final value " + std::to_string(last) + " misses " + std::to_string(target) +
               " by more than 0.05 at M=" + std::to_string(t.m) + " mu=" + t.mu);
    for (std::size_t i = 1; i < report.convergence.size(); ++i) {
      if (report.convergence[i].first <= 16) continue;
      if (report.convergence[i].second > report.convergence[i - 1].second + 1e-12)
        out.fail("series not monotone beyond 2^16");
    }
    detail << " |" << std::abs(last - target) << "|";
  }
  out.detail = "5 tuples, |NDT(2^40) - delta| <=" + detail.str() + " (bound 0.05), monotone past 2^16";
  return out;
}

Outcome criterion10() {
  Outcome out;
  for (int e = 10; e <= 40; ++e) {
    for (int g : {0, 1, 2, 3, 7, 12}) {
      if (effective_snr(pow2(e), e, Rational(g)) * (1 + Rational(g)) != pow2(e) - 1) {
        out.fail("quantization identity broken at P=2^" + std::to_string(e) +
                 " G=" + std::to_string(g));
      }
    }
  }
  const std::vector<std::pair<int, int>> systems = {{2, 1}, {3, 1}, {4, 1}, {3, 2}, {4, 2}, {4, 3}};
  for (const auto& [m, k] : systems) {
    const SystemParams p(m, k, k, Rational(0), Rational(1));
    std::vector<int> demand(k);
    for (int u = 0; u < k; ++u) demand[u] = u + 1;
    const long long bits = 2 * m * k;  // any common multiple works; pattern is trivial at mu=0
    const PlacementPlan plan = plan_placement(p, bits);
    const Schedule s = build_serial_schedule(plan, demand, 10);
    Rational edge(0);
    for (const auto& phase : s.phases) edge += phase.duration();
    for (const auto& seg : s.segments) {
      if (seg.amount_bits / s.log2_snr != edge * Rational(k, m))
        out.fail("cluster samples differ from T_E K/M at M=" + std::to_string(m) +
                 " K=" + std::to_string(k));
    }
  }
  out.detail = "effective-SNR identity exact on 2^10..2^40; cluster sample shares exact";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*run)();
    double budget_seconds;  // 0 = no stated budget
  };
  const std::vector<Entry> entries = {
      {1, "2x2 serial characterization", criterion1, 1.0},
      {2, "2x2 pipelined characterization", criterion2, 1.0},
      {3, "exact regimes (corners, cloud-only, small cache)", criterion3, 5.0},
      {4, "gap theorem audit, 10^4 random tuples", criterion4, 30.0},
      {5, "pipelined/serial relations", criterion5, 0.0},
      {6, "soft-transfer dominance and 3x3 branch switch", criterion6, 0.0},
      {7, "convexity in the cache size", criterion7, 0.0},
      {8, "simulator agreement, idealized rates", criterion8, 10.0},
      {9, "finite-SNR convergence", criterion9, 0.0},
      {10, "quantization algebra and cluster shares", criterion10, 0.0},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (entry.budget_seconds > 0 && seconds > entry.budget_seconds) {
      outcome.fail("runtime " + std::to_string(seconds) + "s exceeds " +
                   std::to_string(entry.budget_seconds) + "s");
    }
    std::printf("%s  criterion %2d (%6.2fs)  %s%s%s\n", outcome.pass ? "PASS" : "FAIL", entry.id,
                seconds, entry.name, outcome.detail.empty() ? "" : ": ",
                outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
