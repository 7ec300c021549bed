#ifndef SFQRM_NETLIST_H
#define SFQRM_NETLIST_H

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sfqrm {

enum class CellKind { kXor, kDff, kSplitter, kDc2Sfq, kSfq2Dc, kSource, kSink };

std::string_view to_string(CellKind kind);
std::optional<CellKind> cell_kind_from(std::string_view token);

// XOR and DFF consume a clock pulse to release their output.
bool is_clocked(CellKind kind);
// Cells subject to open faults and parameter-spread failure. The DC-side
// input converters are treated as part of the (ideal) driver interface and
// are exempt, which keeps the encoder's fault domain at its 49 cells.
bool is_fault_eligible(CellKind kind);

struct Cell {
  std::string id;
  CellKind kind = CellKind::kSplitter;
  std::vector<std::string> inputs;  // data inputs, in pin order
  std::string clock;                // empty when the cell is unclocked
  std::vector<std::string> outputs;
  int line = 0;  // 1-based source line; 0 for programmatically built cells

  bool operator==(const Cell& other) const {
    return id == other.id && kind == other.kind && inputs == other.inputs &&
           clock == other.clock && outputs == other.outputs;
  }
};

struct CellCensus {
  int xor_count = 0;
  int dff_count = 0;
  int splitter_count = 0;
  int clock_splitter_count = 0;  // subset of splitter_count
  int dc2sfq_count = 0;
  int sfq2dc_count = 0;

  int total() const {
    return xor_count + dff_count + splitter_count + dc2sfq_count + sfq2dc_count;
  }
  bool operator==(const CellCensus&) const = default;
};

// Directed graph of SFQ cells connected by single-driver, single-receiver
// nets. Reserved nets: M1..M9 are external message inputs, C1..C9 external
// codeword outputs, CLK the external clock. File format, one cell per line:
//
//   <id> <KIND> in=<net[,net]> [clk=<net>] out=<net[,net]>
//
// '#' starts a comment. Canonical serialization lists cells sorted by id.
class Netlist {
 public:
  // Throws ValidationError on duplicate cell id or bad pin arity.
  void add_cell(Cell cell);

  // Parses and fully validates. Throws ParseError (with line numbers) on
  // syntax problems, ValidationError on structural rule violations.
  static Netlist parse(std::string_view text);
  static Netlist parse_file(const std::string& path);

  std::string serialize() const;

  const std::map<std::string, Cell>& cells() const { return cells_; }
  bool has_cell(const std::string& id) const { return cells_.count(id) > 0; }
  const Cell& cell(const std::string& id) const;

  // Cells marked open (they absorb pulses and never emit). Connectivity is
  // untouched so the simulator can still walk the graph.
  const std::set<std::string>& open_cells() const { return open_cells_; }
  void mark_open(const std::string& id);

  std::vector<std::string> input_ports() const;   // M1..Mk, ascending
  std::vector<std::string> output_ports() const;  // C1..Cn, ascending

  // Structural rules: nets single-driver/single-receiver, ports contiguous,
  // XOR/DFF clocked from the clock tree, clock/data splitters not mixed,
  // graph acyclic, all input->output paths crossing the same number of
  // clocked cells. Throws ValidationError with the offending net/cell.
  void validate() const;

  CellCensus census() const;

  // Splitters fed (transitively) from CLK.
  std::set<std::string> clock_tree_cells() const;

  // Distinct clocked-cell counts over all input->output data paths, sorted.
  // A balanced netlist yields a single value (its pipeline latency).
  std::vector<int> path_clock_depths() const;

  // Uniform clocked depth; requires a balanced, validated netlist.
  int pipeline_latency() const;

  // Fault-eligible cell ids in canonical (sorted) order.
  std::vector<std::string> fault_eligible_cells() const;

  // Cells whose output reaches the given output port along data edges.
  std::set<std::string> cone_of(const std::string& output_port) const;
  // Output ports reachable from each cell along data edges.
  std::map<std::string, std::set<std::string>> output_cones_by_cell() const;

  bool operator==(const Netlist& other) const {
    return cells_ == other.cells_ && open_cells_ == other.open_cells_;
  }

 private:
  std::map<std::string, Cell> cells_;
  std::set<std::string> open_cells_;
};

bool is_reserved_input_net(std::string_view net);   // M1..M9
bool is_reserved_output_net(std::string_view net);  // C1..C9
inline constexpr std::string_view kClockNet = "CLK";

}  // namespace sfqrm

#endif  // SFQRM_NETLIST_H
