// schedule.hpp - Concrete delivery schedules with bit and sample accounting,
// the audits that certify them, and finite-SNR convergence of the counted
// delivery time toward the analytical value.
//
// Durations are in channel uses of the downlink, exact rationals. In the
// idealized rate model every degree of freedom carries log2(P) bits per use,
// so the counted normalized delivery time (latency * log2(P) / L) reproduces
// the analytical value exactly. The finite-SNR model slows every cloud-fed
// transmission by log2(P) / log2(effective SNR), which is where the counted
// value converges from above as P grows.
//
// Edge mechanisms:
//   zf           - cooperative zero-forcing at sum-DoF min(M, K)
//   ia-x         - cross-channel coordination at sum-DoF MK/(M+K-1)
//   tdma-cluster - one of the C(M, K) node clusters time-sharing the channel
//                  while the fronthaul feeds all clusters in parallel (M > K)
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fran/errors.hpp"
#include "fran/model.hpp"
#include "fran/placement.hpp"
#include "fran/rational.hpp"
#include "fran/soft_transfer.hpp"

namespace fran {

enum class PayloadKind { HardBits, SoftSamples };
enum class Mechanism { ZeroForcing, CrossChannel, TdmaCluster };

inline std::string to_string(PayloadKind k) {
  return k == PayloadKind::HardBits ? "hard-bits" : "soft-samples";
}
inline std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::ZeroForcing: return "zf";
    case Mechanism::CrossChannel: return "ia-x";
    default: return "tdma-cluster";
  }
}

struct FronthaulSegment {
  int en = 0;
  int block = 0;
  PayloadKind kind = PayloadKind::SoftSamples;
  Rational amount_bits;
  Rational t_start, t_end;
};

struct DeliveredFragment {
  int user = 0;
  int file = 0;  // 1-based library index
  BitRange range;
};

struct EdgePhase {
  Mechanism mechanism = Mechanism::ZeroForcing;
  int block = 0;
  bool cloud_fed = false;
  std::vector<int> ens;
  std::vector<DeliveredFragment> fragments;
  Rational t_start, t_end;
  Rational duration() const { return t_end - t_start; }
};

struct Schedule {
  Mode mode = Mode::Serial;
  int blocks = 1;
  int log2_snr = 1;
  std::vector<FronthaulSegment> segments;
  std::vector<EdgePhase> phases;
  Rational fronthaul_uses;  // serial: fronthaul window; pipelined: per-block total * B
  Rational edge_uses;
  Rational slot_uses;  // pipelined slot length
  Rational total_uses;

  Rational counted_ndt(long long file_bits) const {
    return total_uses * log2_snr / file_bits;
  }
};

struct AuditResult {
  bool pass = true;
  std::string detail;
};

struct SimulationReport {
  AuditResult cache_budget, fronthaul_capacity, decodability, causality;
  Rational counted_ndt;
  Rational fronthaul_uses, edge_uses, total_uses;
  std::vector<std::pair<int, double>> convergence;  // (log2 P, counted NDT at P)

  bool all_pass() const {
    return cache_budget.pass && fronthaul_capacity.pass && decodability.pass && causality.pass;
  }
};

namespace detail {

inline std::vector<std::vector<int>> k_subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

struct BlockTimes {
  std::vector<EdgePhase> phases;        // t_start/t_end relative to block start
  Rational fronthaul_uses;              // per-node fronthaul duration
  Rational samples_per_en;              // sample count per node
  Rational edge_uses;
};

// One block's phases and fronthaul load; ordering inside a block is fixed
// (ia-x, zf, then cloud-fed) and does not affect any total.
inline BlockTimes build_block(const PlacementPlan& plan, const std::vector<int>& demand, int block,
                              int log2p) {
  const SystemParams& p = plan.params;
  const int m = p.min_mk();
  const long long lb = plan.block_bits();
  const PlacementPattern& pat = plan.pattern;
  BlockTimes out;
  out.fronthaul_uses = 0;
  out.samples_per_en = 0;

  std::vector<int> all_ens(p.en_count);
  for (int i = 0; i < p.en_count; ++i) all_ens[i] = i;

  Rational cursor(0);
  if (pat.exclusive_frac > 0) {
    EdgePhase phase;
    phase.mechanism = Mechanism::CrossChannel;
    phase.block = block;
    phase.ens = all_ens;
    for (int k = 0; k < p.user_count; ++k)
      for (int en = 0; en < p.en_count; ++en)
        phase.fragments.push_back({k, demand[k], plan.exclusive_range(block, en)});
    const Rational dur =
        Rational(p.en_count + p.user_count - 1) * pat.exclusive_frac * lb / log2p;
    phase.t_start = cursor;
    phase.t_end = cursor + dur;
    cursor = phase.t_end;
    out.phases.push_back(std::move(phase));
  }
  if (pat.shared_frac > 0) {
    EdgePhase phase;
    phase.mechanism = Mechanism::ZeroForcing;
    phase.block = block;
    phase.ens = all_ens;
    for (int k = 0; k < p.user_count; ++k)
      phase.fragments.push_back({k, demand[k], plan.shared_range(block)});
    const Rational dur = Rational(p.user_count) * pat.shared_frac * lb / (Rational(m) * log2p);
    phase.t_start = cursor;
    phase.t_end = cursor + dur;
    cursor = phase.t_end;
    out.phases.push_back(std::move(phase));
  }
  if (pat.uncached_frac > 0) {
    if (p.r == 0)
      throw UndeliverableError("uncached content cannot be delivered without fronthaul");
    const Rational total = Rational(p.user_count) * pat.uncached_frac * lb / (Rational(m) * log2p);
    if (p.en_count <= p.user_count) {
      EdgePhase phase;
      phase.mechanism = Mechanism::ZeroForcing;
      phase.block = block;
      phase.cloud_fed = true;
      phase.ens = all_ens;
      for (int k = 0; k < p.user_count; ++k)
        phase.fragments.push_back({k, demand[k], plan.uncached_range(block)});
      phase.t_start = cursor;
      phase.t_end = cursor + total;
      cursor = phase.t_end;
      out.phases.push_back(std::move(phase));
    } else {
      const auto clusters = k_subsets(p.en_count, p.user_count);
      const Rational per_cluster = total / Rational(static_cast<long long>(clusters.size()));
      const BitRange whole = plan.uncached_range(block);
      const Rational chunk = whole.measure() / Rational(static_cast<long long>(clusters.size()));
      for (std::size_t c = 0; c < clusters.size(); ++c) {
        EdgePhase phase;
        phase.mechanism = Mechanism::TdmaCluster;
        phase.block = block;
        phase.cloud_fed = true;
        phase.ens = clusters[c];
        const BitRange piece{whole.lo + chunk * static_cast<long long>(c),
                             whole.lo + chunk * static_cast<long long>(c + 1)};
        for (int k = 0; k < p.user_count; ++k) phase.fragments.push_back({k, demand[k], piece});
        phase.t_start = cursor;
        phase.t_end = cursor + per_cluster;
        cursor = phase.t_end;
        out.phases.push_back(std::move(phase));
      }
    }
    // Every node carries a min(M,K)/M share of the cloud-fed channel uses as
    // quantized samples of log2(P) bits each, all fronthaul links in parallel.
    out.samples_per_en = Rational(m, p.en_count) * total;
    out.fronthaul_uses = out.samples_per_en * log2p / (p.r * log2p);
  }
  out.edge_uses = cursor;
  return out;
}

inline void validate_demand(const SystemParams& p, const std::vector<int>& demand) {
  if (static_cast<int>(demand.size()) != p.user_count)
    throw std::invalid_argument("demand vector must name one file per user");
  for (int d : demand)
    if (d < 1 || d > p.library_size) throw std::invalid_argument("demand outside the library");
}

}  // namespace detail

// Serial operation: all fronthaul segments complete, then the edge phases run
// back to back. Repeated demands are served as distinct unicast streams.
inline Schedule build_serial_schedule(const PlacementPlan& plan, const std::vector<int>& demand,
                                      int log2_snr) {
  detail::validate_demand(plan.params, demand);
  if (log2_snr < 1) throw std::invalid_argument("SNR exponent must be positive");
  if (plan.blocks != 1) throw std::invalid_argument("serial schedules use single-block plans");

  detail::BlockTimes block = detail::build_block(plan, demand, 0, log2_snr);
  Schedule s;
  s.mode = Mode::Serial;
  s.blocks = 1;
  s.log2_snr = log2_snr;
  s.fronthaul_uses = block.fronthaul_uses;
  s.edge_uses = block.edge_uses;
  if (block.samples_per_en > 0) {
    for (int en = 0; en < plan.params.en_count; ++en)
      s.segments.push_back({en, 0, PayloadKind::SoftSamples, block.samples_per_en * log2_snr,
                            Rational(0), block.fronthaul_uses});
  }
  for (EdgePhase& phase : block.phases) {
    phase.t_start += s.fronthaul_uses;
    phase.t_end += s.fronthaul_uses;
    s.phases.push_back(std::move(phase));
  }
  s.total_uses = s.fronthaul_uses + s.edge_uses;
  s.slot_uses = 0;
  return s;
}

// Pipelined block-Markov operation: B + 1 equal slots; slot b carries the
// fronthaul of block b alongside the edge delivery of block b - 1, so the
// counted latency is (B + 1)/B times the larger of the fronthaul and edge
// totals.
inline Schedule build_pipelined_schedule(const PlacementPlan& plan, const std::vector<int>& demand,
                                         int log2_snr) {
  detail::validate_demand(plan.params, demand);
  if (log2_snr < 1) throw std::invalid_argument("SNR exponent must be positive");
  const int blocks = plan.blocks;

  Schedule s;
  s.mode = Mode::Pipelined;
  s.blocks = blocks;
  s.log2_snr = log2_snr;
  s.fronthaul_uses = 0;
  s.edge_uses = 0;

  // All blocks carry identical loads; size the slot from the first.
  detail::BlockTimes probe = detail::build_block(plan, demand, 0, log2_snr);
  s.slot_uses = probe.fronthaul_uses > probe.edge_uses ? probe.fronthaul_uses : probe.edge_uses;

  for (int b = 0; b < blocks; ++b) {
    detail::BlockTimes block = detail::build_block(plan, demand, b, log2_snr);
    const Rational fronthaul_start = Rational(b) * s.slot_uses;
    const Rational edge_start = Rational(b + 1) * s.slot_uses;
    if (block.samples_per_en > 0) {
      for (int en = 0; en < plan.params.en_count; ++en)
        s.segments.push_back({en, b, PayloadKind::SoftSamples, block.samples_per_en * log2_snr,
                              fronthaul_start, fronthaul_start + block.fronthaul_uses});
    }
    for (EdgePhase& phase : block.phases) {
      phase.t_start += edge_start;
      phase.t_end += edge_start;
      if (phase.cloud_fed && phase.t_start < fronthaul_start + block.fronthaul_uses)
        throw CausalityError("edge phase would start before its block's fronthaul completes");
      s.phases.push_back(std::move(phase));
    }
    s.fronthaul_uses += block.fronthaul_uses;
    s.edge_uses += block.edge_uses;
  }
  s.total_uses = Rational(blocks + 1) * s.slot_uses;
  return s;
}

// Runs the four audits; failures come back as report entries with the first
// counterexample, never as exceptions.
inline SimulationReport verify_schedule(const Schedule& s, const PlacementPlan& plan,
                                        const std::vector<int>& demand) {
  detail::validate_demand(plan.params, demand);
  const SystemParams& p = plan.params;
  SimulationReport report;
  report.counted_ndt = s.counted_ndt(plan.file_bits);
  report.fronthaul_uses = s.fronthaul_uses;
  report.edge_uses = s.edge_uses;
  report.total_uses = s.total_uses;

  // Cache budget: per node, summed over the library.
  const Rational cached_per_file = plan.per_file_cached_bits();
  const Rational budget = p.mu * p.library_size * plan.file_bits;
  if (cached_per_file * p.library_size > budget) {
    report.cache_budget = {false, "cached " + format_rational(cached_per_file * p.library_size) +
                                      " bits against budget " + format_rational(budget)};
  }

  // Fronthaul capacity per segment, and enough samples per node to cover its
  // cloud-fed activity in each block.
  const Rational cf = p.r * s.log2_snr;  // bits per channel use
  for (const auto& seg : s.segments) {
    if (seg.amount_bits > (seg.t_end - seg.t_start) * cf) {
      report.fronthaul_capacity = {false, "node " + std::to_string(seg.en) + " carries " +
                                              format_rational(seg.amount_bits) + " bits in " +
                                              format_rational(seg.t_end - seg.t_start) + " uses"};
      break;
    }
  }
  if (report.fronthaul_capacity.pass) {
    std::map<std::pair<int, int>, Rational> activity;  // (block, en) -> cloud-fed uses
    for (const auto& phase : s.phases)
      if (phase.cloud_fed)
        for (int en : phase.ens) activity[{phase.block, en}] += phase.duration();
    std::map<std::pair<int, int>, Rational> samples;
    for (const auto& seg : s.segments)
      samples[{seg.block, seg.en}] += seg.amount_bits / s.log2_snr;
    for (const auto& [key, uses] : activity) {
      auto it = samples.find(key);
      const Rational have = it == samples.end() ? Rational(0) : it->second;
      if (have < uses) {
        report.fronthaul_capacity = {false, "node " + std::to_string(key.second) + " in block " +
                                                std::to_string(key.first) + " needs " +
                                                format_rational(uses) + " samples, has " +
                                                format_rational(have)};
        break;
      }
    }
  }

  // Decodability: each user's requested file must be covered exactly, and
  // every cache-fed fragment must actually sit in the transmitters' caches.
  std::vector<std::vector<BitRange>> delivered(p.user_count);
  for (const auto& phase : s.phases) {
    for (const auto& frag : phase.fragments) {
      if (frag.user < 0 || frag.user >= p.user_count || frag.file != demand[frag.user]) {
        report.decodability = {false, "fragment addressed to the wrong stream"};
        break;
      }
      if (!phase.cloud_fed) {
        auto cached_at = [&](int en) {
          return plan.shared_range(phase.block).contains(frag.range) ||
                 plan.exclusive_range(phase.block, en).contains(frag.range);
        };
        bool ok = false;
        if (phase.mechanism == Mechanism::CrossChannel) {
          for (int en : phase.ens)
            if (cached_at(en)) {
              ok = true;
              break;
            }
        } else {
          ok = !phase.ens.empty();
          for (int en : phase.ens) ok = ok && cached_at(en);
        }
        if (!ok) {
          report.decodability = {false, "fragment [" + format_rational(frag.range.lo) + ", " +
                                            format_rational(frag.range.hi) +
                                            ") is not cached at the transmitting nodes"};
        }
      }
      if (!frag.range.empty()) delivered[frag.user].push_back(frag.range);
    }
    if (!report.decodability.pass) break;
  }
  if (report.decodability.pass) {
    for (int k = 0; k < p.user_count && report.decodability.pass; ++k) {
      auto& ranges = delivered[k];
      std::sort(ranges.begin(), ranges.end(),
                [](const BitRange& a, const BitRange& b) { return a.lo < b.lo; });
      Rational cursor(0);
      for (const auto& range : ranges) {
        if (range.lo > cursor) {
          report.decodability = {false, "user " + std::to_string(k) + " misses [" +
                                            format_rational(cursor) + ", " + format_rational(range.lo) + ")"};
          break;
        }
        if (range.lo < cursor) {
          report.decodability = {false, "user " + std::to_string(k) + " receives [" +
                                            format_rational(range.lo) + ", " + format_rational(cursor) +
                                            ") twice"};
          break;
        }
        cursor = range.hi;
      }
      if (report.decodability.pass && cursor != plan.file_bits)
        report.decodability = {false, "user " + std::to_string(k) + " misses [" + format_rational(cursor) +
                                          ", " + std::to_string(plan.file_bits) + ")"};
    }
  }

  // Causality: serial schedules finish all fronthaul before any edge phase;
  // pipelined schedules may not ship a block's cloud-fed content before that
  // block's fronthaul slot completes.
  if (s.mode == Mode::Serial) {
    Rational fronthaul_end(0);
    for (const auto& seg : s.segments) fronthaul_end = std::max(fronthaul_end, seg.t_end);
    for (const auto& phase : s.phases)
      if (phase.t_start < fronthaul_end) {
        report.causality = {false, "edge phase starts at " + format_rational(phase.t_start) +
                                       " before fronthaul ends at " + format_rational(fronthaul_end)};
        break;
      }
  } else {
    std::map<int, Rational> block_end;
    for (const auto& seg : s.segments)
      block_end[seg.block] = std::max(block_end[seg.block], seg.t_end);
    for (const auto& phase : s.phases) {
      if (!phase.cloud_fed) continue;
      auto it = block_end.find(phase.block);
      if (it != block_end.end() && phase.t_start < it->second) {
        report.causality = {false, "block " + std::to_string(phase.block) +
                                       " edge phase starts before its fronthaul completes"};
        break;
      }
    }
  }
  return report;
}

// Counted delivery time under the finite-SNR rate model, per ladder rung.
// Cache-fed phases run at log2(P) bits per use per stream; cloud-fed phases
// and the fronthaul samples that feed them run at log2 of the effective SNR
// of the quantized scheme (B = log2 P bits per sample, gain sum G). The
// series approaches the analytical value from above as P grows.
inline SimulationReport finite_p_convergence(const PlacementPlan& plan, const std::vector<int>& demand,
                                             const std::vector<int>& ladder, Rational gain_sum = Rational(-1)) {
  if (ladder.empty()) throw std::invalid_argument("SNR ladder must be nonempty");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw std::invalid_argument("SNR ladder must ascend");
  if (gain_sum < 0) gain_sum = plan.params.en_count;  // all-ones channel gains

  const Schedule ideal = build_serial_schedule(plan, demand, ladder.back());
  SimulationReport report = verify_schedule(ideal, plan, demand);

  Rational cache_uses(0), cloud_uses(0);
  for (const auto& phase : ideal.phases)
    (phase.cloud_fed ? cloud_uses : cache_uses) += phase.duration();
  const Rational log2p_ref(ladder.back());
  const double cache_ndt = to_double(cache_uses * log2p_ref / plan.file_bits);
  const double cloud_ndt =
      to_double((cloud_uses + ideal.fronthaul_uses) * log2p_ref / plan.file_bits);

  for (int log2p : ladder) {
    double ratio = 1.0;
    if (cloud_ndt > 0) {
      const Rational eff = effective_snr(pow2(log2p), log2p, gain_sum);
      ratio = log2p / std::log2(to_double(eff));
    }
    report.convergence.emplace_back(log2p, cache_ndt + cloud_ndt * ratio);
  }
  return report;
}

}  // namespace fran
