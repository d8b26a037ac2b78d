// placement.hpp - Demand-agnostic cache placement at desk scale.
//
// Every file of L bits is divided, per block, into three kinds of content:
//   shared    - one range cached identically at every node (cooperation)
//   exclusive - M pairwise disjoint ranges, one per node (coordination)
//   uncached  - the remainder, deliverable only through the cloud
// The per-block fractions (sigma, eta, upsilon) follow the regime of (mu, r):
// serial high fronthaul stores the same mu-fraction everywhere; serial low
// cache stores disjoint mu-fractions; serial high cache overlaps a shared
// piece with disjoint pieces and leaves nothing uncached. Pipelined placement
// follows the band of mu against (mu1, mu2) instead, blending the two
// threshold layouts inside the file-split band. Per-node usage is exactly
// (sigma + eta) L = mu L bits per file regardless of regime.
//
// Serial plans use a single block; pipelined block-Markov delivery lays the
// same pattern out in each of B equal blocks so that every slot carries an
// identical workload.
#pragma once

#include <string>
#include <vector>

#include "fran/errors.hpp"
#include "fran/model.hpp"
#include "fran/rational.hpp"

namespace fran {

struct BitRange {
  Rational lo, hi;  // half-open [lo, hi) in bits
  Rational measure() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  bool contains(const BitRange& other) const { return lo <= other.lo && other.hi <= hi; }
};

struct PlacementPattern {
  Rational shared_frac;     // sigma
  Rational exclusive_frac;  // eta, per node
  Rational uncached_frac;   // upsilon = 1 - sigma - M * eta
};

inline PlacementPattern placement_pattern(const SystemParams& p, Mode mode) {
  p.validate();
  auto serial_pattern = [&]() -> PlacementPattern {
    const RegimeLabel label = classify_regime(p, Mode::Serial);
    if (label.fronthaul_regime == FronthaulRegime::HighFronthaul)
      return {p.mu, Rational(0), 1 - p.mu};
    if (label.cache_regime == CacheRegime::HighCache) {
      if (p.en_count == 1) return {p.mu, Rational(0), 1 - p.mu};  // mu = 1 here
      const Rational shared = (p.mu * p.en_count - 1) / (p.en_count - 1);
      const Rational exclusive = (1 - p.mu) / (p.en_count - 1);
      return {shared, exclusive, Rational(0)};
    }
    return {Rational(0), p.mu, 1 - p.mu * p.en_count};
  };
  if (mode == Mode::Serial || p.r == 0) return serial_pattern();

  const Thresholds t = thresholds(p);
  const RegimeLabel label = classify_regime(p, Mode::Pipelined);
  if (label.band == PipelinedBand::Cooperation) return {p.mu, Rational(0), 1 - p.mu};
  if (label.band == PipelinedBand::Coordination) return {Rational(0), p.mu, 1 - p.mu * p.en_count};
  // File-split band: lambda of every block follows the mu1 layout (disjoint),
  // the rest the mu2 layout (shared); cache usage stays exactly mu.
  const Rational lambda = (t.mu2 - p.mu) / (t.mu2 - t.mu1);
  const Rational shared = (1 - lambda) * t.mu2;
  const Rational exclusive = lambda * t.mu1;
  return {shared, exclusive, 1 - shared - Rational(p.en_count) * exclusive};
}

struct PlacementPlan {
  SystemParams params;
  long long file_bits = 0;  // L
  Mode mode = Mode::Serial;
  int blocks = 1;
  PlacementPattern pattern;

  long long block_bits() const { return file_bits / blocks; }

  // Layout inside block b (0-based), identical for every file: the shared
  // range first, then the M disjoint ranges, then the uncached remainder.
  BitRange shared_range(int block) const {
    const Rational base = Rational(block) * block_bits();
    return {base, base + pattern.shared_frac * block_bits()};
  }
  BitRange exclusive_range(int block, int en) const {
    const Rational base = Rational(block) * block_bits() + pattern.shared_frac * block_bits();
    const Rational width = pattern.exclusive_frac * block_bits();
    return {base + width * en, base + width * (en + 1)};
  }
  BitRange uncached_range(int block) const {
    const Rational base = Rational(block) * block_bits();
    return {base + (pattern.shared_frac + pattern.exclusive_frac * params.en_count) * block_bits(),
            base + block_bits()};
  }

  // Cached ranges of one node within any single file.
  std::vector<BitRange> cached_ranges(int en) const {
    std::vector<BitRange> out;
    for (int b = 0; b < blocks; ++b) {
      if (!shared_range(b).empty()) out.push_back(shared_range(b));
      if (!exclusive_range(b, en).empty()) out.push_back(exclusive_range(b, en));
    }
    return out;
  }

  Rational per_file_cached_bits() const {
    return (pattern.shared_frac + pattern.exclusive_frac) * file_bits;
  }
};

namespace detail {
inline BigInt pattern_divisor(const PlacementPattern& pat) {
  return lcm(denominator(pat.shared_frac), denominator(pat.exclusive_frac));
}
}  // namespace detail

// Smallest L for which every placement fraction is an integer number of bits
// (and, for pipelined plans, every block is).
inline long long required_file_bits(const SystemParams& p, Mode mode, int blocks = 1) {
  if (blocks < 1) throw std::invalid_argument("block count must be positive");
  const BigInt d = detail::pattern_divisor(placement_pattern(p, mode)) * blocks;
  if (d > BigInt(1) << 62) throw std::overflow_error("placement divisor too large");
  return d.convert_to<long long>();
}

inline PlacementPlan plan_placement(const SystemParams& p, long long file_bits, Mode mode = Mode::Serial,
                                    int blocks = 1) {
  p.validate();
  if (blocks < 1) throw std::invalid_argument("block count must be positive");
  if (file_bits < 1) throw std::invalid_argument("file size must be positive");
  const long long unit = required_file_bits(p, mode, blocks);
  if (file_bits % unit != 0) {
    const long long suggested = ((file_bits + unit - 1) / unit) * unit;
    throw IndivisibleLengthError("file size " + std::to_string(file_bits) +
                                     " does not make every placement fraction integral; nearest valid size is " +
                                     std::to_string(suggested),
                                 suggested);
  }
  PlacementPlan plan;
  plan.params = p;
  plan.file_bits = file_bits;
  plan.mode = mode;
  plan.blocks = blocks;
  plan.pattern = placement_pattern(p, mode);
  return plan;
}

}  // namespace fran
