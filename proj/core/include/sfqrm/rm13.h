#ifndef SFQRM_RM13_H
#define SFQRM_RM13_H

#include <string>
#include <vector>

#include "sfqrm/netlist.h"

namespace sfqrm {

// Reference RM(1,3) encoder netlist: an XOR tree realizing
//   c1 = m1^m2^m3^m4   c2 = m1^m2^m3   c3 = m1^m2^m4   c4 = m1^m2
//   c5 = m1^m3^m4      c6 = m1^m3      c7 = m1^m4      c8 = m1
// in two clocked stages (every input->output path crosses exactly two
// clocked cells; c8 runs through two DFFs). Shared first-stage terms:
// m1^m2 feeds c1..c4, m1^m3 feeds c5/c6, and the delayed m4 feeds c3/c5.
// Census: 8 XOR, 7 DFF, 26 SPLITTER (14 in the clock tree), 4 DC2SFQ,
// 8 SFQ2DC; 49 cells in the fault domain.
Netlist build_rm13_reference();

// Encoder-less 4-channel link: each message bit drives one SFQ-to-DC
// converter directly. 4 cells, zero pipeline latency.
Netlist build_no_encoder_reference();

// Output channels whose last two exclusive cells share one clock splitter,
// so a single clock-splitter failure silences at most that channel. c2 and
// c7 pair an XOR with a DFF, c8 pairs its two DFFs; c1's cone ends in two
// XORs, which is what an 8-XOR/7-DFF budget leaves for a 4-input parity.
struct ChannelProtectionPair {
  std::string channel;         // output port, e.g. "C8"
  std::string cell_a;
  std::string cell_b;
  std::string clock_splitter;  // common clock parent of cell_a and cell_b
};

std::vector<ChannelProtectionPair> rm13_protection_pairs();

// The two path-balancing DFFs on the c8 channel.
inline constexpr const char* kC8FirstDff = "dff_c8_1";
inline constexpr const char* kC8SecondDff = "dff_c8_2";

// Reference-design figures for the encoder plus its output converters.
// Process/cell-library estimates carried as metadata; nothing in this
// model computes them.
inline constexpr double kRm13PowerDissipationWatts = 101.5e-6;
inline constexpr double kRm13LayoutAreaMm2 = 0.193;
// 8 NRZ output channels at the default 5 GHz clock.
inline constexpr double kRm13AggregateDataRateBps = 40e9;

}  // namespace sfqrm

#endif  // SFQRM_RM13_H
