// sweep.hpp - Trade-off sweeps, gap-audit grids, and their CSV form.
//
// Rows are evaluated independently (optionally across worker threads) and
// always emitted in grid order. CSV columns carry both a 12-significant-digit
// decimal and the exact "p/q" value, so a sweep can be re-parsed and
// re-evaluated without loss.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "fran/analysis.hpp"
#include "fran/bounds.hpp"
#include "fran/model.hpp"
#include "fran/rational.hpp"
#include "fran/schemes.hpp"

namespace fran {

enum class SweepAxis { Mu, R };

inline std::string to_string(SweepAxis a) { return a == SweepAxis::Mu ? "mu" : "r"; }

struct SweepSpec {
  SystemParams base;
  SweepAxis axis = SweepAxis::Mu;
  std::vector<Rational> grid;
  std::vector<Mode> modes = {Mode::Serial};

  static std::vector<Rational> make_grid(const Rational& start, const Rational& end, const Rational& step) {
    if (step <= 0 || end < start) throw std::invalid_argument("bad sweep grid");
    std::vector<Rational> g;
    for (Rational v = start; v <= end; v += step) g.push_back(v);
    return g;
  }
};

struct SweepRow {
  Rational axis;
  Mode mode = Mode::Serial;
  Rational lower;
  Rational achievable;
  std::optional<Rational> exact;
  Rational gap;
};

namespace detail {

// Deterministic fan-out: applies fn to every index, at most `threads` at a
// time; results land in their slots so ordering never depends on completion.
// The first exception thrown by any worker is rethrown on the calling thread.
template <typename Fn>
inline void run_indexed(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < count && !failed.load(); i = next.fetch_add(1)) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline unsigned sweep_threads() {
  if (const char* env = std::getenv("FRAN_NDT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace detail

inline SweepRow evaluate_sweep_point(const SystemParams& base, SweepAxis axis, const Rational& value,
                                     Mode mode) {
  SystemParams p = base;
  (axis == SweepAxis::Mu ? p.mu : p.r) = value;
  p.validate();
  SweepRow row;
  row.axis = value;
  row.mode = mode;
  if (mode == Mode::Serial || p.r == 0) {
    row.lower = lp_lower_bound(p).point.delta;
    row.achievable = achievable_serial(p).point.delta;
  } else {
    row.lower = pipelined_lower_bound(p);
    row.achievable = achievable_pipelined(p).point.delta;
  }
  const OptimalityCertificate cert = exact_ndt(p, mode);
  if (cert.status == CertificateStatus::Exact) row.exact = cert.value;
  row.gap = row.achievable / row.lower;
  return row;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  if (spec.grid.empty()) throw std::invalid_argument("empty sweep grid");
  for (const Rational& v : spec.grid) {
    SystemParams p = spec.base;
    (spec.axis == SweepAxis::Mu ? p.mu : p.r) = v;
    p.validate();
    if (p.r == 0 && p.mu < p.inverse_m())
      throw std::invalid_argument("grid point mu=" + format_rational(p.mu) + ", r=0 has no finite delivery time");
  }
  if (threads == 0) threads = detail::sweep_threads();
  std::vector<SweepRow> rows(spec.grid.size() * spec.modes.size());
  detail::run_indexed(rows.size(), threads, [&](std::size_t i) {
    const std::size_t mode_idx = i / spec.grid.size();
    const std::size_t grid_idx = i % spec.grid.size();
    rows[i] = evaluate_sweep_point(spec.base, spec.axis, spec.grid[grid_idx], spec.modes[mode_idx]);
  });
  return rows;
}

inline std::string sweep_csv_header() {
  return "axis,lower,achievable,exact,gap,mode,axis_pq,lower_pq,achievable_pq,exact_pq,gap_pq";
}

inline std::string sweep_csv_row(const SweepRow& row) {
  std::ostringstream out;
  out << format_decimal(row.axis) << ',' << format_decimal(row.lower) << ','
      << format_decimal(row.achievable) << ',' << (row.exact ? format_decimal(*row.exact) : "") << ','
      << format_decimal(row.gap) << ',' << to_string(row.mode) << ',' << format_rational(row.axis) << ','
      << format_rational(row.lower) << ',' << format_rational(row.achievable) << ','
      << (row.exact ? format_rational(*row.exact) : "") << ',' << format_rational(row.gap);
  return out.str();
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = sweep_csv_header() + "\n";
  for (const auto& row : rows) out += sweep_csv_row(row) + "\n";
  return out;
}

// Parses a sweep CSV back into rows using the exact "p/q" columns.
inline std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<SweepRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != sweep_csv_header()) throw std::invalid_argument("unrecognized sweep CSV header");
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    while (cells.size() < 11) cells.emplace_back();
    SweepRow row;
    row.axis = parse_rational(cells[6]);
    row.lower = parse_rational(cells[7]);
    row.achievable = parse_rational(cells[8]);
    if (!cells[9].empty()) row.exact = parse_rational(cells[9]);
    row.gap = parse_rational(cells[10]);
    row.mode = cells[5] == "pipelined" ? Mode::Pipelined : Mode::Serial;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct GapGridSpec {
  int m_min = 1, m_max = 4;
  int k_min = 1, k_max = 4;
  int mu_points = 9;
  int r_points = 9;
  Rational r_max = Rational(4);
  std::vector<Mode> modes = {Mode::Serial};
};

struct GapRow {
  int en_count, user_count;
  Rational mu, r;
  Mode mode;
  Rational gap;
};

// Evaluates the achievable/lower ratio over the grid; every ratio must land
// in [1, 2]. The mu grid spans [0, 1] inclusive; the r grid spans (0, r_max].
inline std::vector<GapRow> run_gap_grid(const GapGridSpec& spec, unsigned threads = 0) {
  if (spec.m_min < 1 || spec.m_max < spec.m_min || spec.k_min < 1 || spec.k_max < spec.k_min ||
      spec.mu_points < 1 || spec.r_points < 1 || spec.r_max <= 0)
    throw std::invalid_argument("bad gap grid");
  if (threads == 0) threads = detail::sweep_threads();
  std::vector<std::tuple<int, int, Rational, Rational, Mode>> tuples;
  for (Mode mode : spec.modes)
    for (int m = spec.m_min; m <= spec.m_max; ++m)
      for (int k = spec.k_min; k <= spec.k_max; ++k)
        for (int i = 0; i < spec.mu_points; ++i)
          for (int j = 1; j <= spec.r_points; ++j) {
            const Rational mu = spec.mu_points == 1 ? Rational(0) : Rational(i, spec.mu_points - 1);
            const Rational r = spec.r_max * Rational(j, spec.r_points);
            tuples.emplace_back(m, k, mu, r, mode);
          }
  std::vector<GapRow> rows(tuples.size());
  detail::run_indexed(rows.size(), threads, [&](std::size_t i) {
    const auto& [m, k, mu, r, mode] = tuples[i];
    SystemParams p(m, k, k, mu, r);  // N = K suffices; the bounds are N-free
    rows[i] = {m, k, mu, r, mode, multiplicative_gap(p, mode)};
  });
  return rows;
}

}  // namespace fran
