#include "sfqrm/fault.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "sfqrm/errors.h"
#include "sfqrm/seed.h"

namespace sfqrm {

std::set<std::string> FaultPlan::all_cells() const {
  std::set<std::string> all = open_cells;
  all.insert(failed_cells.begin(), failed_cells.end());
  return all;
}

std::string FaultPlan::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["open_cells"] = open_cells;
  j["failed_cells"] = failed_cells;
  return j.dump();
}

FaultPlan FaultPlan::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fault plan JSON: ") + e.what());
  }
  FaultPlan plan;
  try {
    plan.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("open_cells")) {
      plan.open_cells = j.at("open_cells").get<std::set<std::string>>();
    }
    if (j.contains("failed_cells")) {
      plan.failed_cells = j.at("failed_cells").get<std::set<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fault plan JSON: ") + e.what());
  }
  return plan;
}

double SpreadModel::margin_for(CellKind kind) const {
  auto it = margin_pct.find(kind);
  if (it == margin_pct.end()) {
    throw std::invalid_argument("SpreadModel: no margin for cell kind " +
                                std::string(to_string(kind)));
  }
  return it->second;
}

double SpreadModel::fail_probability(CellKind kind) const {
  if (spread_pct <= 0.0) return 0.0;
  return std::max(0.0, 1.0 - margin_for(kind) / spread_pct);
}

void SpreadModel::validate() const {
  if (spread_pct < 0.0 || spread_pct > 0.5) {
    throw std::invalid_argument("SpreadModel: spread_pct must be in [0, 0.5]");
  }
  for (const auto& [kind, margin] : margin_pct) {
    if (margin <= 0.0 || margin > 0.5) {
      throw std::invalid_argument("SpreadModel: margins must be in (0, 0.5]");
    }
  }
}

SpreadModel SpreadModel::uniform_margin(double spread_pct, double margin_pct) {
  SpreadModel m;
  m.spread_pct = spread_pct;
  for (CellKind k : {CellKind::kXor, CellKind::kDff, CellKind::kSplitter,
                     CellKind::kSfq2Dc}) {
    m.margin_pct[k] = margin_pct;
  }
  m.validate();
  return m;
}

SpreadModel SpreadModel::calibrated(double spread_pct) {
  SpreadModel m;
  m.spread_pct = spread_pct;
  m.margin_pct[CellKind::kXor] = 0.1998;
  m.margin_pct[CellKind::kDff] = 0.1998;
  m.margin_pct[CellKind::kSplitter] = 0.1998;
  m.margin_pct[CellKind::kSfq2Dc] = 0.1868;
  m.validate();
  return m;
}

std::set<std::string> apply_spread(const Netlist& net, const SpreadModel& model,
                                   std::uint64_t seed) {
  model.validate();
  std::set<std::string> failed;
  std::mt19937_64 rng(seed);
  for (const auto& id : net.fault_eligible_cells()) {
    const double u = to_unit_interval(rng());
    const double deviation = (2.0 * u - 1.0) * model.spread_pct;
    if (std::abs(deviation) > model.margin_for(net.cell(id).kind)) {
      failed.insert(id);
    }
  }
  return failed;
}

FaultPlan sample_fault_plan(const Netlist& net, double fault_prob,
                            const std::optional<SpreadModel>& ppv,
                            std::uint64_t seed) {
  if (fault_prob < 0.0 || fault_prob > 1.0) {
    throw std::invalid_argument("sample_fault_plan: fault_prob must be in [0, 1]");
  }
  FaultPlan plan;
  plan.seed = seed;
  std::mt19937_64 rng(derive_seed(seed, SeedStream::kFaults, 0));
  for (const auto& id : net.fault_eligible_cells()) {
    if (to_unit_interval(rng()) < fault_prob) plan.open_cells.insert(id);
  }
  if (ppv) {
    plan.failed_cells =
        apply_spread(net, *ppv, derive_seed(seed, SeedStream::kSpread, 0));
  }
  return plan;
}

Netlist inject_faults(const Netlist& net, const FaultPlan& plan) {
  Netlist out = net;
  for (const auto& id : plan.open_cells) out.mark_open(id);
  for (const auto& id : plan.failed_cells) out.mark_open(id);
  return out;
}

}  // namespace sfqrm
