#ifndef SFQRM_GATE_SIM_H
#define SFQRM_GATE_SIM_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sfqrm/bit_block.h"
#include "sfqrm/fault.h"
#include "sfqrm/netlist.h"

namespace sfqrm {

struct SimConfig {
  double clock_freq_hz = 5e9;
  int cycles_per_message = 1;
  int samples_per_cycle = 8;  // waveform resolution, must be even and >= 4
  double noise_sigma = 0.0;   // Gaussian amplitude noise, fraction of swing

  void validate() const;  // throws std::invalid_argument
  double cycle_period_ns() const { return 1e9 / clock_freq_hz; }
  double sample_period_ns() const {
    return cycle_period_ns() / samples_per_cycle;
  }
};

// How a sampled two-level waveform maps to bits.
//   kLevel:         bit i = 1 iff the cycle-i plateau is high. Inverse of
//                   bits_to_waveform; used on the DC-to-SFQ input side.
//   kNrzTransition: bit i = 1 iff the cycle-i level differs from cycle i-1
//                   (reset level low). This is what an SFQ-to-DC converter
//                   produces, toggling its DC output on every pulse.
enum class WaveformCoding { kLevel, kNrzTransition };

// One plateau per bit (1 -> high), samples_per_cycle samples each, plus
// optional Gaussian amplitude noise drawn deterministically from seed.
std::vector<double> bits_to_waveform(std::span<const std::uint8_t> bits,
                                     const SimConfig& cfg,
                                     std::uint64_t seed = 0);

// Averages each cycle window, thresholds at the midpoint of the nominal
// levels, then applies the selected coding. Sample count must be a multiple
// of samples_per_cycle.
std::vector<std::uint8_t> waveform_to_bits(
    std::span<const double> samples, const SimConfig& cfg,
    WaveformCoding coding = WaveformCoding::kNrzTransition);

struct ChannelTrace {
  std::string channel;             // output port name, e.g. "C3"
  std::vector<double> samples;     // DC level per sample
  std::vector<std::uint8_t> bits;  // per-cycle NRZ transition bits
};

struct SimResult {
  std::vector<ChannelTrace> traces;  // one per output port, C1..Cn order
  int latency_cycles = 0;            // clocked pipeline depth of the netlist
  int total_cycles = 0;
};

// Clock-synchronous pulse simulation. Per cycle: input converters emit one
// pulse per '1' message bit; pulses ripple through splitters/converters and
// accumulate at clocked cells; on the cycle's clock edge an XOR fires when
// it holds odd parity and a DFF releases its stored pulse; output toggles
// become visible in the following cycle's DC level. Cells in the plan (and
// any cells already marked open on the netlist) never emit, which also
// silences the clock subtree below an open clock splitter.
//
// Message bits enter through bits_to_waveform and leave through
// waveform_to_bits, so the returned bits went through the same
// waveform-classification step the hardware output would.
SimResult simulate(const Netlist& net, const FaultPlan& plan,
                   const std::vector<BitBlock>& messages, const SimConfig& cfg,
                   std::uint64_t noise_seed = 0);

// Received blocks (one per transmitted message), read from the traces at
// the netlist's pipeline latency.
std::vector<BitBlock> received_blocks(const SimResult& result,
                                      const SimConfig& cfg,
                                      std::size_t message_count);

// Long-format CSV dump: time_ns,channel,level at sample resolution.
void write_trace_csv(const SimResult& result, const SimConfig& cfg,
                     std::ostream& out);

}  // namespace sfqrm

#endif  // SFQRM_GATE_SIM_H
