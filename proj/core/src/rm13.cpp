#include "sfqrm/rm13.h"

namespace sfqrm {
namespace {

Cell make(std::string id, CellKind kind, std::vector<std::string> in,
          std::string clk, std::vector<std::string> out) {
  Cell c;
  c.id = std::move(id);
  c.kind = kind;
  c.inputs = std::move(in);
  c.clock = std::move(clk);
  c.outputs = std::move(out);
  return c;
}

}  // namespace

Netlist build_rm13_reference() {
  Netlist net;
  auto add = [&net](std::string id, CellKind kind, std::vector<std::string> in,
                    std::string clk, std::vector<std::string> out) {
    net.add_cell(make(std::move(id), kind, std::move(in), std::move(clk),
                      std::move(out)));
  };
  const auto SPL = CellKind::kSplitter;

  // Input converters.
  add("dc2sfq_m1", CellKind::kDc2Sfq, {"M1"}, "", {"m1"});
  add("dc2sfq_m2", CellKind::kDc2Sfq, {"M2"}, "", {"m2"});
  add("dc2sfq_m3", CellKind::kDc2Sfq, {"M3"}, "", {"m3"});
  add("dc2sfq_m4", CellKind::kDc2Sfq, {"M4"}, "", {"m4"});

  // m1 fans out to three XORs and the c8 DFF chain.
  add("spl_m1_1", SPL, {"m1"}, "", {"m1_a", "m1_b"});
  add("spl_m1_2", SPL, {"m1_a"}, "", {"m1_c", "m1_d"});
  add("spl_m1_3", SPL, {"m1_b"}, "", {"m1_e", "m1_f"});
  // m3 fans out to two XORs and its delay DFF.
  add("spl_m3_1", SPL, {"m3"}, "", {"m3_a", "m3_b"});
  add("spl_m3_2", SPL, {"m3_b"}, "", {"m3_c", "m3_d"});
  // m4 fans out to two XORs and its delay DFF.
  add("spl_m4_1", SPL, {"m4"}, "", {"m4_a", "m4_b"});
  add("spl_m4_2", SPL, {"m4_b"}, "", {"m4_c", "m4_d"});

  // Stage 1 (first clocked stage).
  add("xor_m12", CellKind::kXor, {"m1_c", "m2"}, "clk_08a", {"x12"});
  add("xor_m34", CellKind::kXor, {"m3_a", "m4_a"}, "clk_c1b", {"x34"});
  add("xor_m13", CellKind::kXor, {"m1_d", "m3_c"}, "clk_08b", {"x13"});
  add("xor_m14", CellKind::kXor, {"m1_e", "m4_c"}, "clk_c7b", {"x14"});
  add("dff_m3", CellKind::kDff, {"m3_d"}, "clk_c2b", {"m3_del"});
  add("dff_m4", CellKind::kDff, {"m4_d"}, "clk_07b", {"m4_del"});
  add("dff_c8_1", CellKind::kDff, {"m1_f"}, "clk_c8a", {"c8_mid"});

  // x12 = m1^m2 feeds the c1, c2, c3 XORs and the c4 DFF.
  add("spl_x12_1", SPL, {"x12"}, "", {"x12_a", "x12_b"});
  add("spl_x12_2", SPL, {"x12_a"}, "", {"x12_c", "x12_d"});
  add("spl_x12_3", SPL, {"x12_b"}, "", {"x12_e", "x12_f"});
  // x13 = m1^m3 feeds the c5 XOR and the c6 DFF.
  add("spl_x13_1", SPL, {"x13"}, "", {"x13_a", "x13_b"});
  // Delayed m4 feeds the c3 and c5 XORs.
  add("spl_m4d_1", SPL, {"m4_del"}, "", {"m4d_a", "m4d_b"});

  // Stage 2 (second clocked stage).
  add("xor_c1", CellKind::kXor, {"x12_c", "x34"}, "clk_c1a", {"y1"});
  add("xor_c2", CellKind::kXor, {"x12_d", "m3_del"}, "clk_c2a", {"y2"});
  add("xor_c3", CellKind::kXor, {"x12_e", "m4d_a"}, "clk_09a", {"y3"});
  add("dff_c4", CellKind::kDff, {"x12_f"}, "clk_09b", {"y4"});
  add("xor_c5", CellKind::kXor, {"x13_a", "m4d_b"}, "clk_10a", {"y5"});
  add("dff_c6", CellKind::kDff, {"x13_b"}, "clk_10b", {"y6"});
  add("dff_c7", CellKind::kDff, {"x14"}, "clk_c7a", {"y7"});
  add("dff_c8_2", CellKind::kDff, {"c8_mid"}, "clk_c8b", {"y8"});

  // Output converters.
  add("sfq2dc_c1", CellKind::kSfq2Dc, {"y1"}, "", {"C1"});
  add("sfq2dc_c2", CellKind::kSfq2Dc, {"y2"}, "", {"C2"});
  add("sfq2dc_c3", CellKind::kSfq2Dc, {"y3"}, "", {"C3"});
  add("sfq2dc_c4", CellKind::kSfq2Dc, {"y4"}, "", {"C4"});
  add("sfq2dc_c5", CellKind::kSfq2Dc, {"y5"}, "", {"C5"});
  add("sfq2dc_c6", CellKind::kSfq2Dc, {"y6"}, "", {"C6"});
  add("sfq2dc_c7", CellKind::kSfq2Dc, {"y7"}, "", {"C7"});
  add("sfq2dc_c8", CellKind::kSfq2Dc, {"y8"}, "", {"C8"});

  // Clock distribution: binary tree over the 15 clocked cells. The four
  // per-channel cell pairs (c1, c2, c7, c8) hang off a common parent each,
  // so losing that parent silences one channel instead of two.
  add("cspl_01", SPL, {"CLK"}, "", {"clk_01a", "clk_01b"});
  add("cspl_02", SPL, {"clk_01a"}, "", {"clk_02a", "clk_02b"});
  add("cspl_03", SPL, {"clk_01b"}, "", {"clk_03a", "clk_03b"});
  add("cspl_04", SPL, {"clk_02a"}, "", {"clk_04a", "clk_04b"});
  add("cspl_05", SPL, {"clk_02b"}, "", {"clk_05a", "clk_05b"});
  add("cspl_06", SPL, {"clk_03a"}, "", {"clk_06a", "clk_06b"});
  add("cspl_07", SPL, {"clk_03b"}, "", {"clk_07a", "clk_07b"});
  add("cspl_c1", SPL, {"clk_04a"}, "", {"clk_c1a", "clk_c1b"});
  add("cspl_c2", SPL, {"clk_04b"}, "", {"clk_c2a", "clk_c2b"});
  add("cspl_c7", SPL, {"clk_05a"}, "", {"clk_c7a", "clk_c7b"});
  add("cspl_c8", SPL, {"clk_05b"}, "", {"clk_c8a", "clk_c8b"});
  add("cspl_08", SPL, {"clk_06a"}, "", {"clk_08a", "clk_08b"});
  add("cspl_09", SPL, {"clk_06b"}, "", {"clk_09a", "clk_09b"});
  add("cspl_10", SPL, {"clk_07a"}, "", {"clk_10a", "clk_10b"});

  net.validate();
  return net;
}

Netlist build_no_encoder_reference() {
  Netlist net;
  net.add_cell(make("sfq2dc_c1", CellKind::kSfq2Dc, {"M1"}, "", {"C1"}));
  net.add_cell(make("sfq2dc_c2", CellKind::kSfq2Dc, {"M2"}, "", {"C2"}));
  net.add_cell(make("sfq2dc_c3", CellKind::kSfq2Dc, {"M3"}, "", {"C3"}));
  net.add_cell(make("sfq2dc_c4", CellKind::kSfq2Dc, {"M4"}, "", {"C4"}));
  net.validate();
  return net;
}

std::vector<ChannelProtectionPair> rm13_protection_pairs() {
  return {
      {"C1", "xor_c1", "xor_m34", "cspl_c1"},
      {"C2", "xor_c2", "dff_m3", "cspl_c2"},
      {"C7", "dff_c7", "xor_m14", "cspl_c7"},
      {"C8", kC8FirstDff, kC8SecondDff, "cspl_c8"},
  };
}

}  // namespace sfqrm
