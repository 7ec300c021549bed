#ifndef SFQRM_CENSUS_H
#define SFQRM_CENSUS_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfqrm/gate_sim.h"
#include "sfqrm/netlist.h"

namespace sfqrm {

enum class FaultSetClass { kHarmless, kCorrectable, kUncorrectable };

std::string_view to_string(FaultSetClass cls);
std::optional<FaultSetClass> fault_set_class_from(std::string_view name);

struct CensusEntry {
  std::vector<std::string> cells;  // sorted ids
  int worst_bit_errors = 0;        // max over all input patterns
  FaultSetClass cls = FaultSetClass::kHarmless;
  bool operator==(const CensusEntry&) const = default;
};

struct CensusSizeSummary {
  int size = 0;
  long harmless = 0;
  long correctable = 0;
  long uncorrectable = 0;
  long total() const { return harmless + correctable + uncorrectable; }
  bool operator==(const CensusSizeSummary&) const = default;
};

// Exhaustive fault-tolerance census: every combination of up to max_size
// fault-eligible cells is opened, all input patterns are streamed through,
// and the worst-case number of wrong codeword bits (vs the fault-free run)
// is recorded. 0 bits -> harmless, 1 -> correctable by RM(1,3), >= 2 ->
// uncorrectable.
struct CensusReport {
  int max_size = 0;
  int cell_count = 0;                       // fault-eligible cells
  std::vector<CensusEntry> entries;         // sizes ascending, lexicographic
  std::vector<CensusSizeSummary> summaries; // one per size 1..max_size

  const CensusEntry* find(std::vector<std::string> cells) const;

  std::string to_csv() const;
  std::string to_json() const;
  static CensusReport from_csv(std::string_view text);   // throws ParseError
  static CensusReport from_json(std::string_view text);  // throws ParseError

  bool operator==(const CensusReport&) const = default;
};

// Guarded to max_size <= 3 (the size-3 sweep is ~18k simulations already).
CensusReport fault_tolerance_census(const Netlist& net, int max_size,
                                    const SimConfig& cfg = {});

}  // namespace sfqrm

#endif  // SFQRM_CENSUS_H
