#include "sfqrm/netlist.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "sfqrm/errors.h"

namespace sfqrm {

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::kXor: return "XOR";
    case CellKind::kDff: return "DFF";
    case CellKind::kSplitter: return "SPLITTER";
    case CellKind::kDc2Sfq: return "DC2SFQ";
    case CellKind::kSfq2Dc: return "SFQ2DC";
    case CellKind::kSource: return "SOURCE";
    case CellKind::kSink: return "SINK";
  }
  return "?";
}

std::optional<CellKind> cell_kind_from(std::string_view token) {
  if (token == "XOR") return CellKind::kXor;
  if (token == "DFF") return CellKind::kDff;
  if (token == "SPLITTER") return CellKind::kSplitter;
  if (token == "DC2SFQ") return CellKind::kDc2Sfq;
  if (token == "SFQ2DC") return CellKind::kSfq2Dc;
  if (token == "SOURCE") return CellKind::kSource;
  if (token == "SINK") return CellKind::kSink;
  return std::nullopt;
}

bool is_clocked(CellKind kind) {
  return kind == CellKind::kXor || kind == CellKind::kDff;
}

bool is_fault_eligible(CellKind kind) {
  switch (kind) {
    case CellKind::kXor:
    case CellKind::kDff:
    case CellKind::kSplitter:
    case CellKind::kSfq2Dc:
      return true;
    default:
      return false;
  }
}

bool is_reserved_input_net(std::string_view net) {
  return net.size() == 2 && net[0] == 'M' && net[1] >= '1' && net[1] <= '9';
}

bool is_reserved_output_net(std::string_view net) {
  return net.size() == 2 && net[0] == 'C' && net[1] >= '1' && net[1] <= '9';
}

namespace {

struct Arity {
  int inputs;
  bool clocked;
  int outputs;
};

Arity arity_for(CellKind kind) {
  switch (kind) {
    case CellKind::kXor: return {2, true, 1};
    case CellKind::kDff: return {1, true, 1};
    case CellKind::kSplitter: return {1, false, 2};
    case CellKind::kDc2Sfq: return {1, false, 1};
    case CellKind::kSfq2Dc: return {1, false, 1};
    case CellKind::kSource: return {0, false, 1};
    case CellKind::kSink: return {1, false, 0};
  }
  return {0, false, 0};
}

void check_arity(const Cell& cell) {
  const Arity want = arity_for(cell.kind);
  const std::string what = "cell '" + cell.id + "' (" +
                           std::string(to_string(cell.kind)) + ")";
  if (static_cast<int>(cell.inputs.size()) != want.inputs) {
    throw ValidationError(what + " must have exactly " +
                          std::to_string(want.inputs) + " data input(s)");
  }
  if (static_cast<int>(cell.outputs.size()) != want.outputs) {
    throw ValidationError(what + " must have exactly " +
                          std::to_string(want.outputs) + " output(s)");
  }
  if (want.clocked && cell.clock.empty()) {
    throw ValidationError("unclocked " + std::string(to_string(cell.kind)) +
                          ": " + what + " has no clk net");
  }
  if (!want.clocked && !cell.clock.empty()) {
    throw ValidationError(what + " must not have a clk net");
  }
}

std::vector<std::string> split_csv(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.emplace_back(text.substr(start, comma - start));
    start = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

// Where each net's pulses come from and go to. Reserved nets get synthetic
// external endpoints so every valid net ends up with exactly one of each.
struct NetIndex {
  struct Endpoint {
    std::string cell;  // empty for the external world
    bool clock_pin = false;
  };
  std::map<std::string, std::vector<Endpoint>> drivers;
  std::map<std::string, std::vector<Endpoint>> receivers;
};

NetIndex index_nets(const std::map<std::string, Cell>& cells) {
  NetIndex idx;
  for (const auto& [id, cell] : cells) {
    for (const auto& net : cell.outputs) idx.drivers[net].push_back({id, false});
    for (const auto& net : cell.inputs) idx.receivers[net].push_back({id, false});
    if (!cell.clock.empty()) idx.receivers[cell.clock].push_back({id, true});
  }
  for (auto& [net, recv] : idx.receivers) {
    if (is_reserved_input_net(net) || net == kClockNet) {
      idx.drivers[net].push_back({"", false});
    }
  }
  for (auto& [net, drv] : idx.drivers) {
    if (is_reserved_output_net(net)) idx.receivers[net].push_back({"", false});
  }
  return idx;
}

}  // namespace

void Netlist::add_cell(Cell cell) {
  if (cell.id.empty()) throw ValidationError("cell id must not be empty");
  if (cells_.count(cell.id)) {
    throw ValidationError("duplicate cell id '" + cell.id + "'");
  }
  check_arity(cell);
  cells_.emplace(cell.id, std::move(cell));
}

const Cell& Netlist::cell(const std::string& id) const {
  auto it = cells_.find(id);
  if (it == cells_.end()) throw ValidationError("unknown cell id '" + id + "'");
  return it->second;
}

void Netlist::mark_open(const std::string& id) {
  if (!cells_.count(id)) throw ValidationError("unknown cell id '" + id + "'");
  open_cells_.insert(id);
}

Netlist Netlist::parse(std::string_view text) {
  Netlist net;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string id, kind_token;
    if (!(tokens >> id)) continue;  // blank or comment-only line
    if (!(tokens >> kind_token)) {
      throw ParseError("expected cell kind after id '" + id + "'", line_no);
    }
    const auto kind = cell_kind_from(kind_token);
    if (!kind) {
      throw ParseError("unknown cell kind '" + kind_token + "'", line_no);
    }
    Cell cell;
    cell.id = id;
    cell.kind = *kind;
    cell.line = line_no;
    std::string field;
    while (tokens >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw ParseError("expected key=value, got '" + field + "'", line_no);
      }
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (value.empty()) {
        throw ParseError("empty value for '" + key + "='", line_no);
      }
      if (key == "in") {
        if (!cell.inputs.empty()) throw ParseError("duplicate in=", line_no);
        cell.inputs = split_csv(value);
      } else if (key == "clk") {
        if (!cell.clock.empty()) throw ParseError("duplicate clk=", line_no);
        cell.clock = value;
      } else if (key == "out") {
        if (!cell.outputs.empty()) throw ParseError("duplicate out=", line_no);
        cell.outputs = split_csv(value);
      } else {
        throw ParseError("unknown field '" + key + "='", line_no);
      }
    }
    try {
      net.add_cell(std::move(cell));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  net.validate();
  return net;
}

Netlist Netlist::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure("cannot open netlist file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Netlist::serialize() const {
  std::ostringstream out;
  for (const auto& [id, cell] : cells_) {
    out << id << ' ' << to_string(cell.kind);
    if (!cell.inputs.empty()) {
      out << " in=";
      for (std::size_t i = 0; i < cell.inputs.size(); ++i) {
        if (i) out << ',';
        out << cell.inputs[i];
      }
    }
    if (!cell.clock.empty()) out << " clk=" << cell.clock;
    if (!cell.outputs.empty()) {
      out << " out=";
      for (std::size_t i = 0; i < cell.outputs.size(); ++i) {
        if (i) out << ',';
        out << cell.outputs[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> Netlist::input_ports() const {
  std::set<std::string> ports;
  for (const auto& [id, cell] : cells_) {
    for (const auto& net : cell.inputs) {
      if (is_reserved_input_net(net)) ports.insert(net);
    }
  }
  return {ports.begin(), ports.end()};
}

std::vector<std::string> Netlist::output_ports() const {
  std::set<std::string> ports;
  for (const auto& [id, cell] : cells_) {
    for (const auto& net : cell.outputs) {
      if (is_reserved_output_net(net)) ports.insert(net);
    }
  }
  return {ports.begin(), ports.end()};
}

std::set<std::string> Netlist::clock_tree_cells() const {
  std::set<std::string> tree;
  const NetIndex idx = index_nets(cells_);
  std::vector<std::string> frontier{std::string(kClockNet)};
  while (!frontier.empty()) {
    const std::string net = std::move(frontier.back());
    frontier.pop_back();
    auto it = idx.receivers.find(net);
    if (it == idx.receivers.end()) continue;
    for (const auto& ep : it->second) {
      if (ep.cell.empty()) continue;
      const Cell& c = cells_.at(ep.cell);
      if (c.kind == CellKind::kSplitter && !tree.count(c.id)) {
        tree.insert(c.id);
        for (const auto& out : c.outputs) frontier.push_back(out);
      }
    }
  }
  return tree;
}

void Netlist::validate() const {
  if (cells_.empty()) throw ValidationError("no cells in netlist");

  const NetIndex idx = index_nets(cells_);

  std::set<std::string> all_nets;
  for (const auto& [net, _] : idx.drivers) all_nets.insert(net);
  for (const auto& [net, _] : idx.receivers) all_nets.insert(net);

  for (const auto& net : all_nets) {
    const auto dit = idx.drivers.find(net);
    const auto rit = idx.receivers.find(net);
    const std::size_t n_drv = dit == idx.drivers.end() ? 0 : dit->second.size();
    const std::size_t n_rcv = rit == idx.receivers.end() ? 0 : rit->second.size();
    if (n_drv > 1) {
      throw ValidationError("multi-driver net '" + net + "'");
    }
    if (n_drv == 0) {
      throw ValidationError("undriven net '" + net + "'");
    }
    if (n_rcv > 1) {
      throw ValidationError("fan-out violation on net '" + net +
                            "' (single fan-out; insert a SPLITTER)");
    }
    if (n_rcv == 0) {
      throw ValidationError("dangling net '" + net + "'");
    }
    if (is_reserved_input_net(net) || net == kClockNet) {
      if (!dit->second.front().cell.empty()) {
        throw ValidationError("reserved input net '" + net +
                              "' driven by cell '" + dit->second.front().cell + "'");
      }
    }
    if (is_reserved_output_net(net) && !rit->second.front().cell.empty()) {
      throw ValidationError("reserved output net '" + net + "' feeds cell '" +
                            rit->second.front().cell + "'");
    }
  }

  // Ports must be contiguous so M1..Mk maps onto message bits 1..k.
  const auto inputs = input_ports();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string want = "M" + std::to_string(i + 1);
    if (inputs[i] != want) {
      throw ValidationError("input ports must be contiguous M1..Mk; missing '" +
                            want + "'");
    }
  }
  if (inputs.empty()) throw ValidationError("netlist has no input ports (M1..)");
  const auto outputs = output_ports();
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const std::string want = "C" + std::to_string(i + 1);
    if (outputs[i] != want) {
      throw ValidationError("output ports must be contiguous C1..Cn; missing '" +
                            want + "'");
    }
  }
  if (outputs.empty()) throw ValidationError("netlist has no output ports (C1..)");

  // Clock distribution: every XOR/DFF clock pin must trace back to CLK
  // through splitters, and clock splitters must not leak into data paths.
  const std::set<std::string> tree = clock_tree_cells();
  bool any_clocked = false;
  for (const auto& [id, cell] : cells_) {
    if (!is_clocked(cell.kind)) continue;
    any_clocked = true;
    const auto& drv = idx.drivers.at(cell.clock).front();
    const bool from_tree =
        cell.clock == kClockNet || (!drv.cell.empty() && tree.count(drv.cell));
    if (!from_tree) {
      throw ValidationError("cell '" + id + "' clock net '" + cell.clock +
                            "' is not fed by the clock tree");
    }
  }
  if (any_clocked && !all_nets.count(std::string(kClockNet))) {
    throw ValidationError("netlist has clocked cells but no CLK net");
  }
  for (const auto& id : tree) {
    for (const auto& out : cells_.at(id).outputs) {
      const auto& ep = idx.receivers.at(out).front();
      const bool ok = ep.clock_pin ||
                      (!ep.cell.empty() &&
                       cells_.at(ep.cell).kind == CellKind::kSplitter &&
                       tree.count(ep.cell));
      if (!ok) {
        throw ValidationError("clock-tree splitter '" + id +
                              "' drives a data input via net '" + out + "'");
      }
    }
  }
  for (const auto& [id, cell] : cells_) {
    if (cell.kind != CellKind::kSplitter || tree.count(id)) continue;
    for (const auto& out : cell.outputs) {
      if (idx.receivers.at(out).front().clock_pin) {
        throw ValidationError("data splitter '" + id +
                              "' drives a clock pin via net '" + out + "'");
      }
    }
  }

  // Acyclicity (Kahn) over all cell-to-cell edges, clock included.
  std::map<std::string, int> indegree;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [id, _] : cells_) indegree[id] = 0;
  for (const auto& [id, cell] : cells_) {
    for (const auto& out : cell.outputs) {
      const auto& ep = idx.receivers.at(out).front();
      if (ep.cell.empty()) continue;
      succ[id].push_back(ep.cell);
      ++indegree[ep.cell];
    }
  }
  std::vector<std::string> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push_back(id);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::string id = std::move(ready.back());
    ready.pop_back();
    ++visited;
    for (const auto& next : succ[id]) {
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != cells_.size()) {
    for (const auto& [id, deg] : indegree) {
      if (deg > 0) {
        throw ValidationError("cycle in netlist involving cell '" + id + "'");
      }
    }
  }

  // Path balance: all input->output data paths must cross the same number
  // of clocked cells, otherwise codeword bits of one message would arrive
  // in different cycles.
  if (path_clock_depths().size() > 1) {
    throw ValidationError("unbalanced data paths: clocked depths differ");
  }
}

std::vector<int> Netlist::path_clock_depths() const {
  const NetIndex idx = index_nets(cells_);

  std::map<std::string, std::set<int>> memo;
  std::function<const std::set<int>&(const std::string&)> depths_from =
      [&](const std::string& id) -> const std::set<int>& {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    auto& result = memo[id];  // inserted first; graph is acyclic
    const Cell& c = cells_.at(id);
    const int self = is_clocked(c.kind) ? 1 : 0;
    for (const auto& out : c.outputs) {
      if (is_reserved_output_net(out)) {
        result.insert(self);
        continue;
      }
      const auto rit = idx.receivers.find(out);
      if (rit == idx.receivers.end()) continue;
      for (const auto& ep : rit->second) {
        if (ep.cell.empty() || ep.clock_pin) continue;
        for (int d : depths_from(ep.cell)) result.insert(self + d);
      }
    }
    return result;
  };

  std::set<int> depths;
  for (const auto& port : input_ports()) {
    const auto rit = idx.receivers.find(port);
    if (rit == idx.receivers.end()) continue;
    for (const auto& ep : rit->second) {
      if (ep.cell.empty()) continue;
      for (int d : depths_from(ep.cell)) depths.insert(d);
    }
  }
  return {depths.begin(), depths.end()};
}

int Netlist::pipeline_latency() const {
  const auto depths = path_clock_depths();
  if (depths.size() != 1) {
    throw ValidationError("pipeline latency undefined: unbalanced paths");
  }
  return depths.front();
}

CellCensus Netlist::census() const {
  CellCensus c;
  const auto tree = clock_tree_cells();
  for (const auto& [id, cell] : cells_) {
    switch (cell.kind) {
      case CellKind::kXor: ++c.xor_count; break;
      case CellKind::kDff: ++c.dff_count; break;
      case CellKind::kSplitter:
        ++c.splitter_count;
        if (tree.count(id)) ++c.clock_splitter_count;
        break;
      case CellKind::kDc2Sfq: ++c.dc2sfq_count; break;
      case CellKind::kSfq2Dc: ++c.sfq2dc_count; break;
      default: break;
    }
  }
  return c;
}

std::vector<std::string> Netlist::fault_eligible_cells() const {
  std::vector<std::string> out;
  for (const auto& [id, cell] : cells_) {
    if (is_fault_eligible(cell.kind)) out.push_back(id);
  }
  return out;
}

std::set<std::string> Netlist::cone_of(const std::string& output_port) const {
  const NetIndex idx = index_nets(cells_);
  std::set<std::string> cone;
  const auto dit = idx.drivers.find(output_port);
  if (dit == idx.drivers.end() || dit->second.front().cell.empty()) {
    throw ValidationError("no driver for output port '" + output_port + "'");
  }
  std::vector<std::string> frontier{dit->second.front().cell};
  while (!frontier.empty()) {
    const std::string id = std::move(frontier.back());
    frontier.pop_back();
    if (!cone.insert(id).second) continue;
    for (const auto& in : cells_.at(id).inputs) {
      const auto it = idx.drivers.find(in);
      if (it == idx.drivers.end()) continue;
      const auto& ep = it->second.front();
      if (!ep.cell.empty()) frontier.push_back(ep.cell);
    }
  }
  return cone;
}

std::map<std::string, std::set<std::string>> Netlist::output_cones_by_cell() const {
  std::map<std::string, std::set<std::string>> cones;
  for (const auto& [id, _] : cells_) cones[id];
  for (const auto& port : output_ports()) {
    for (const auto& id : cone_of(port)) cones[id].insert(port);
  }
  return cones;
}

}  // namespace sfqrm
