#ifndef SFQRM_FAULT_H
#define SFQRM_FAULT_H

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "sfqrm/netlist.h"

namespace sfqrm {

// One sampled circuit realization: cells knocked out by open faults and/or
// by parameter spread. A listed cell absorbs pulses and never emits.
struct FaultPlan {
  std::set<std::string> open_cells;
  std::set<std::string> failed_cells;
  std::uint64_t seed = 0;
  int realization_index = 0;

  bool empty() const { return open_cells.empty() && failed_cells.empty(); }
  std::set<std::string> all_cells() const;

  std::string to_json() const;
  static FaultPlan from_json(std::string_view text);  // throws ParseError

  bool operator==(const FaultPlan&) const = default;
};

// Behavioral surrogate for process parameter variations: each fault-eligible
// cell draws one deviation, uniform on [-spread_pct, +spread_pct], and fails
// when the deviation magnitude exceeds its kind's critical margin. This is a
// calibration knob, not device physics; per-cell failure probability is
// max(0, 1 - margin/spread).
struct SpreadModel {
  double spread_pct = 0.20;
  std::map<CellKind, double> margin_pct;

  double margin_for(CellKind kind) const;  // throws if the kind has no margin
  double fail_probability(CellKind kind) const;
  void validate() const;  // 0 <= spread <= 0.5, margins in (0, 0.5]

  // Same critical margin for every eligible kind.
  static SpreadModel uniform_margin(double spread_pct, double margin_pct);
  // Default calibration: output converters markedly more fragile than logic
  // cells (margins 0.1868 vs 0.1998), so at +/-20% spread a 49-cell encoder
  // runs error-free in roughly 55% of realizations and a bare 4-converter
  // link in roughly 75%.
  static SpreadModel calibrated(double spread_pct = 0.20);
};

// Per-cell uniform deviation draw in canonical cell order; deterministic in
// the seed. Returns ids of failed cells.
std::set<std::string> apply_spread(const Netlist& net, const SpreadModel& model,
                                   std::uint64_t seed);

// Marks each fault-eligible cell open with probability fault_prob, plus any
// spread failures. The per-cell uniform draws are compared against
// fault_prob directly, so for a fixed seed the open set at p1 <= p2 is
// nested: plan(p1).open_cells is a subset of plan(p2).open_cells.
FaultPlan sample_fault_plan(const Netlist& net, double fault_prob,
                            const std::optional<SpreadModel>& ppv,
                            std::uint64_t seed);

// Copy of net with every cell in the plan marked open. Idempotent; plans
// over disjoint cell sets commute. Throws on unknown cell ids.
Netlist inject_faults(const Netlist& net, const FaultPlan& plan);

}  // namespace sfqrm

#endif  // SFQRM_FAULT_H
