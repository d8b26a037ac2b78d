// json_io.hpp - JSON views of the engine's public types. Rationals serialize
// as exact "p/q" strings; a parallel decimal field is added where a reader
// would want one.
#pragma once

#include <json.hpp>

#include "fran/analysis.hpp"
#include "fran/bounds.hpp"
#include "fran/model.hpp"
#include "fran/placement.hpp"
#include "fran/rational.hpp"
#include "fran/schedule.hpp"
#include "fran/schemes.hpp"

namespace fran::jsonio {

using nlohmann::json;

inline json dump(const Rational& x) { return format_rational(x); }

inline json dump(const SystemParams& p) {
  return {{"M", p.en_count}, {"K", p.user_count}, {"N", p.library_size},
          {"mu", dump(p.mu)}, {"r", dump(p.r)}};
}

inline json dump(const NdtPoint& p) {
  return {{"delta_f", dump(p.delta_f)}, {"delta_e", dump(p.delta_e)}, {"delta", dump(p.delta)}};
}

inline json dump(const Thresholds& t) {
  json j = {{"mu1", dump(t.mu1)}, {"mu2", dump(t.mu2)}};
  j["r_th"] = t.r_th ? dump(*t.r_th) : json("infinity");
  return j;
}

inline json dump(const RegimeLabel& label) {
  json j = {{"cache", to_string(label.cache_regime)},
            {"fronthaul", to_string(label.fronthaul_regime)},
            {"mode", to_string(label.mode)}};
  if (label.mode == Mode::Pipelined) j["band"] = to_string(label.band);
  return j;
}

inline json dump(const LpSolution& s) {
  return {{"delta_f", dump(s.point.delta_f)},
          {"delta_e", dump(s.point.delta_e)},
          {"delta", dump(s.point.delta)},
          {"active", s.active}};
}

inline json dump(const SchemeNdt& s) {
  json split = json::array();
  for (const auto& part : s.split.parts)
    split.push_back({{"scheme", to_string(part.scheme)},
                     {"fraction", dump(part.fraction)},
                     {"cache_use", dump(part.cache_use)}});
  return {{"scheme", to_string(s.scheme)},
          {"mode", to_string(s.mode)},
          {"delta_f", dump(s.point.delta_f)},
          {"delta_e", dump(s.point.delta_e)},
          {"delta", dump(s.point.delta)},
          {"split", split}};
}

inline json dump(const OptimalityCertificate& c) {
  return {{"value", dump(c.value)},  {"status", to_string(c.status)}, {"gap", dump(c.gap)},
          {"witness", c.witness},    {"lower", dump(c.lower)},        {"achievable", dump(c.achievable)}};
}

inline json dump(const PlacementPlan& plan) {
  json per_en = json::array();
  for (int en = 0; en < plan.params.en_count; ++en) {
    json ranges = json::array();
    for (const auto& range : plan.cached_ranges(en))
      ranges.push_back({dump(range.lo), dump(range.hi)});
    per_en.push_back(ranges);
  }
  return {{"params", dump(plan.params)},
          {"file_bits", plan.file_bits},
          {"mode", to_string(plan.mode)},
          {"blocks", plan.blocks},
          {"shared_fraction", dump(plan.pattern.shared_frac)},
          {"exclusive_fraction", dump(plan.pattern.exclusive_frac)},
          {"uncached_fraction", dump(plan.pattern.uncached_frac)},
          {"cached_ranges_per_en", per_en}};
}

inline json dump(const Schedule& s) {
  json segments = json::array();
  for (const auto& seg : s.segments)
    segments.push_back({{"en", seg.en},
                        {"block", seg.block},
                        {"kind", to_string(seg.kind)},
                        {"amount", dump(seg.amount_bits)},
                        {"t_start", dump(seg.t_start)},
                        {"t_end", dump(seg.t_end)}});
  json phases = json::array();
  for (const auto& phase : s.phases) {
    json fragments = json::array();
    for (const auto& frag : phase.fragments)
      fragments.push_back(
          {{"user", frag.user}, {"file", frag.file}, {"lo", dump(frag.range.lo)}, {"hi", dump(frag.range.hi)}});
    phases.push_back({{"mechanism", to_string(phase.mechanism)},
                      {"block", phase.block},
                      {"cloud_fed", phase.cloud_fed},
                      {"ens", phase.ens},
                      {"fragments", fragments},
                      {"t_start", dump(phase.t_start)},
                      {"t_end", dump(phase.t_end)}});
  }
  return {{"mode", to_string(s.mode)},
          {"blocks", s.blocks},
          {"log2_snr", s.log2_snr},
          {"total_uses", dump(s.total_uses)},
          {"segments", segments},
          {"phases", phases}};
}

inline json dump(const AuditResult& a) {
  json j = {{"pass", a.pass}};
  if (!a.detail.empty()) j["detail"] = a.detail;
  return j;
}

inline json dump(const SimulationReport& r) {
  json j = {{"audits",
             {{"cache_budget", dump(r.cache_budget)},
              {"fronthaul_capacity", dump(r.fronthaul_capacity)},
              {"decodability", dump(r.decodability)},
              {"causality", dump(r.causality)}}},
            {"counted_ndt", dump(r.counted_ndt)},
            {"counted_ndt_decimal", to_double(r.counted_ndt)},
            {"fronthaul_uses", dump(r.fronthaul_uses)},
            {"edge_uses", dump(r.edge_uses)},
            {"all_pass", r.all_pass()}};
  if (!r.convergence.empty()) {
    json series = json::array();
    for (const auto& [log2p, ndt] : r.convergence) series.push_back({log2p, ndt});
    j["convergence"] = series;
  }
  return j;
}

}  // namespace fran::jsonio
