#include "sfqrm/gate_sim.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include "sfqrm/errors.h"
#include "sfqrm/seed.h"

namespace sfqrm {

void SimConfig::validate() const {
  if (clock_freq_hz <= 0.0) {
    throw std::invalid_argument("SimConfig: clock_freq_hz must be positive");
  }
  if (cycles_per_message < 1) {
    throw std::invalid_argument("SimConfig: cycles_per_message must be >= 1");
  }
  if (samples_per_cycle < 4 || samples_per_cycle % 2 != 0) {
    throw std::invalid_argument(
        "SimConfig: samples_per_cycle must be even and >= 4");
  }
  if (noise_sigma < 0.0) {
    throw std::invalid_argument("SimConfig: noise_sigma must be >= 0");
  }
}

std::vector<double> bits_to_waveform(std::span<const std::uint8_t> bits,
                                     const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::vector<double> samples;
  samples.reserve(bits.size() * static_cast<std::size_t>(cfg.samples_per_cycle));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
  for (const std::uint8_t b : bits) {
    const double level = b ? 1.0 : 0.0;
    for (int s = 0; s < cfg.samples_per_cycle; ++s) {
      samples.push_back(cfg.noise_sigma > 0.0 ? level + noise(rng) : level);
    }
  }
  return samples;
}

std::vector<std::uint8_t> waveform_to_bits(std::span<const double> samples,
                                           const SimConfig& cfg,
                                           WaveformCoding coding) {
  cfg.validate();
  const std::size_t spc = static_cast<std::size_t>(cfg.samples_per_cycle);
  if (samples.size() % spc != 0) {
    throw std::invalid_argument(
        "waveform_to_bits: sample count not divisible by samples_per_cycle");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(samples.size() / spc);
  bool previous = false;  // reset level is low
  for (std::size_t c = 0; c < samples.size() / spc; ++c) {
    double sum = 0.0;
    for (std::size_t s = 0; s < spc; ++s) sum += samples[c * spc + s];
    const bool level = sum / static_cast<double>(spc) > 0.5;
    if (coding == WaveformCoding::kLevel) {
      bits.push_back(level ? 1 : 0);
    } else {
      bits.push_back(level != previous ? 1 : 0);
    }
    previous = level;
  }
  return bits;
}

namespace {

// Dense-index view of a netlist for the per-cycle pulse walk.
struct Engine {
  struct Receiver {
    enum class Target { kNone, kCellData, kCellClock, kPort } target =
        Target::kNone;
    int index = 0;  // cell index or port index
  };

  std::vector<const Cell*> cells;          // canonical (sorted id) order
  std::map<std::string, int> cell_index;
  std::vector<std::string> ports;          // output ports, C1..Cn
  std::map<std::string, Receiver> receiver_of_net;
  std::vector<bool> alive;
  std::vector<bool> clocked_this_run;      // clock pulse reaches the cell

  std::vector<std::uint8_t> xor_parity;
  std::vector<std::uint8_t> dff_stored;
  std::vector<std::uint8_t> port_level;

  explicit Engine(const Netlist& net, const FaultPlan& plan) {
    for (const auto& [id, cell] : net.cells()) {
      cell_index[id] = static_cast<int>(cells.size());
      cells.push_back(&cell);
    }
    ports = net.output_ports();
    std::map<std::string, int> port_index;
    for (std::size_t i = 0; i < ports.size(); ++i) {
      port_index[ports[i]] = static_cast<int>(i);
    }

    for (const auto& [id, cell] : net.cells()) {
      for (const auto& in : cell.inputs) {
        receiver_of_net[in] = {Receiver::Target::kCellData, cell_index[id]};
      }
      if (!cell.clock.empty()) {
        receiver_of_net[cell.clock] = {Receiver::Target::kCellClock,
                                       cell_index[id]};
      }
      for (const auto& out : cell.outputs) {
        if (is_reserved_output_net(out)) {
          receiver_of_net[out] = {Receiver::Target::kPort, port_index[out]};
        }
      }
    }

    alive.assign(cells.size(), true);
    auto kill = [this](const std::string& id) {
      auto it = cell_index.find(id);
      if (it == cell_index.end()) {
        throw ValidationError("fault plan names unknown cell '" + id + "'");
      }
      alive[static_cast<std::size_t>(it->second)] = false;
    };
    for (const auto& id : net.open_cells()) kill(id);
    for (const auto& id : plan.open_cells) kill(id);
    for (const auto& id : plan.failed_cells) kill(id);

    // Static clock reachability: a clocked cell sees the clock iff every
    // splitter between CLK and its clk pin is alive.
    clocked_this_run.assign(cells.size(), false);
    std::vector<std::string> frontier{std::string(kClockNet)};
    while (!frontier.empty()) {
      const std::string net_name = std::move(frontier.back());
      frontier.pop_back();
      const auto it = receiver_of_net.find(net_name);
      if (it == receiver_of_net.end()) continue;
      const Receiver r = it->second;
      if (r.target == Receiver::Target::kCellClock) {
        clocked_this_run[static_cast<std::size_t>(r.index)] = true;
      } else if (r.target == Receiver::Target::kCellData) {
        const Cell& c = *cells[static_cast<std::size_t>(r.index)];
        if (c.kind == CellKind::kSplitter &&
            alive[static_cast<std::size_t>(r.index)]) {
          for (const auto& out : c.outputs) frontier.push_back(out);
        }
      }
    }

    xor_parity.assign(cells.size(), 0);
    dff_stored.assign(cells.size(), 0);
    port_level.assign(ports.size(), 0);
  }

  // Walk a data pulse through unclocked cells until it parks at a clocked
  // input, toggles an output port, or dies at an open cell.
  void propagate(const std::string& start_net) {
    std::vector<const std::string*> stack{&start_net};
    while (!stack.empty()) {
      const std::string& net_name = *stack.back();
      stack.pop_back();
      const auto it = receiver_of_net.find(net_name);
      if (it == receiver_of_net.end()) continue;
      const Receiver r = it->second;
      if (r.target == Receiver::Target::kPort) {
        port_level[static_cast<std::size_t>(r.index)] ^= 1;
        continue;
      }
      if (r.target != Receiver::Target::kCellData) continue;
      const std::size_t ci = static_cast<std::size_t>(r.index);
      const Cell& c = *cells[ci];
      switch (c.kind) {
        case CellKind::kXor:
          xor_parity[ci] ^= 1;
          break;
        case CellKind::kDff:
          dff_stored[ci] = 1;
          break;
        case CellKind::kSplitter:
        case CellKind::kDc2Sfq:
        case CellKind::kSfq2Dc:
          if (alive[ci]) {
            for (const auto& out : c.outputs) stack.push_back(&out);
          }
          break;
        default:
          break;
      }
    }
  }

  // Clock edge at the end of a cycle: decide every firing from the
  // pre-edge state, then release the pulses.
  void clock_edge() {
    std::vector<const std::string*> emitted;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      const Cell& c = *cells[ci];
      if (!is_clocked(c.kind) || !clocked_this_run[ci]) continue;
      bool fire = false;
      if (c.kind == CellKind::kXor) {
        fire = xor_parity[ci] != 0;
        xor_parity[ci] = 0;
      } else {
        fire = dff_stored[ci] != 0;
        dff_stored[ci] = 0;
      }
      if (fire && alive[ci]) emitted.push_back(&c.outputs.front());
    }
    for (const auto* net_name : emitted) propagate(*net_name);
  }
};

}  // namespace

SimResult simulate(const Netlist& net, const FaultPlan& plan,
                   const std::vector<BitBlock>& messages, const SimConfig& cfg,
                   std::uint64_t noise_seed) {
  cfg.validate();
  net.validate();

  const auto inputs = net.input_ports();
  const auto outputs = net.output_ports();
  for (const auto& m : messages) {
    if (m.size() != inputs.size()) {
      throw std::invalid_argument(
          "simulate: message length does not match the input port count");
    }
  }

  const int latency = net.pipeline_latency();
  const int cpm = cfg.cycles_per_message;
  const int total_cycles = static_cast<int>(messages.size()) * cpm + latency;

  // Input side: message bits -> waveform -> per-cycle pulse decisions.
  std::vector<std::vector<std::uint8_t>> pulse_in(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::vector<std::uint8_t> stream(static_cast<std::size_t>(total_cycles), 0);
    for (std::size_t j = 0; j < messages.size(); ++j) {
      stream[j * static_cast<std::size_t>(cpm)] =
          static_cast<std::uint8_t>(messages[j].bit(i + 1));
    }
    const auto wave = bits_to_waveform(
        stream, cfg, derive_seed(noise_seed, SeedStream::kNoise, i));
    pulse_in[i] = waveform_to_bits(wave, cfg, WaveformCoding::kLevel);
  }

  Engine engine(net, plan);
  std::vector<std::vector<std::uint8_t>> levels(
      outputs.size(), std::vector<std::uint8_t>(
                          static_cast<std::size_t>(total_cycles), 0));

  for (int t = 0; t < total_cycles; ++t) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (pulse_in[i][static_cast<std::size_t>(t)]) engine.propagate(inputs[i]);
    }
    // The level seen during this cycle; edge-released toggles land in t+1.
    for (std::size_t ch = 0; ch < outputs.size(); ++ch) {
      levels[ch][static_cast<std::size_t>(t)] = engine.port_level[ch];
    }
    engine.clock_edge();
  }

  SimResult result;
  result.latency_cycles = latency;
  result.total_cycles = total_cycles;
  for (std::size_t ch = 0; ch < outputs.size(); ++ch) {
    ChannelTrace trace;
    trace.channel = outputs[ch];
    trace.samples = bits_to_waveform(
        levels[ch], cfg, derive_seed(noise_seed, SeedStream::kNoise, 1000 + ch));
    trace.bits = waveform_to_bits(trace.samples, cfg,
                                  WaveformCoding::kNrzTransition);
    result.traces.push_back(std::move(trace));
  }
  return result;
}

std::vector<BitBlock> received_blocks(const SimResult& result,
                                      const SimConfig& cfg,
                                      std::size_t message_count) {
  const int cpm = cfg.cycles_per_message;
  std::vector<BitBlock> blocks;
  blocks.reserve(message_count);
  for (std::size_t j = 0; j < message_count; ++j) {
    std::vector<std::uint8_t> bits(result.traces.size(), 0);
    for (std::size_t ch = 0; ch < result.traces.size(); ++ch) {
      std::uint8_t b = 0;
      for (int w = 0; w < cpm; ++w) {
        const std::size_t cycle = static_cast<std::size_t>(
            result.latency_cycles + static_cast<int>(j) * cpm + w);
        if (cycle >= result.traces[ch].bits.size()) {
          throw std::invalid_argument(
              "received_blocks: trace shorter than requested messages");
        }
        b ^= result.traces[ch].bits[cycle];
      }
      bits[ch] = b;
    }
    blocks.emplace_back(std::move(bits), BlockRole::kCodeword);
  }
  return blocks;
}

void write_trace_csv(const SimResult& result, const SimConfig& cfg,
                     std::ostream& out) {
  out << "time_ns,channel,level\n";
  char buf[64];
  for (const auto& trace : result.traces) {
    for (std::size_t s = 0; s < trace.samples.size(); ++s) {
      const double t = static_cast<double>(s) * cfg.sample_period_ns();
      std::snprintf(buf, sizeof buf, "%.6g,%s,%.6g", t, trace.channel.c_str(),
                    trace.samples[s]);
      out << buf << '\n';
    }
  }
}

}  // namespace sfqrm
