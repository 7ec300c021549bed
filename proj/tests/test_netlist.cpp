#include "sfqrm/netlist.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sfqrm/errors.h"
#include "sfqrm/gate_sim.h"
#include "sfqrm/rm13.h"

using namespace sfqrm;

namespace {

std::string data_file(const std::string& name) {
  return std::string(SFQRM_DATA_DIR) + "/" + name;
}

}  // namespace

TEST(Netlist, ReferenceCensusMatchesDesign) {
  const Netlist net = build_rm13_reference();
  const CellCensus c = net.census();
  EXPECT_EQ(c.xor_count, 8);
  EXPECT_EQ(c.dff_count, 7);
  EXPECT_EQ(c.splitter_count, 26);
  EXPECT_EQ(c.clock_splitter_count, 14);
  EXPECT_EQ(c.dc2sfq_count, 4);
  EXPECT_EQ(c.sfq2dc_count, 8);
  EXPECT_EQ(c.total(), 53);
  EXPECT_EQ(net.fault_eligible_cells().size(), 49u);
}

TEST(Netlist, ReferenceStructure) {
  const Netlist net = build_rm13_reference();
  EXPECT_NO_THROW(net.validate());
  EXPECT_EQ(net.input_ports(), (std::vector<std::string>{"M1", "M2", "M3", "M4"}));
  EXPECT_EQ(net.output_ports(), (std::vector<std::string>{"C1", "C2", "C3", "C4",
                                                          "C5", "C6", "C7", "C8"}));
  EXPECT_EQ(net.path_clock_depths(), std::vector<int>{2});
  EXPECT_EQ(net.pipeline_latency(), 2);
  EXPECT_EQ(net.clock_tree_cells().size(), 14u);
}

TEST(Netlist, C8ConeHoldsTwoDffsAndNoXor) {
  const Netlist net = build_rm13_reference();
  const auto cone = net.cone_of("C8");
  int dffs = 0, xors = 0;
  for (const auto& id : cone) {
    if (net.cell(id).kind == CellKind::kDff) ++dffs;
    if (net.cell(id).kind == CellKind::kXor) ++xors;
  }
  EXPECT_EQ(dffs, 2);
  EXPECT_EQ(xors, 0);
  EXPECT_TRUE(cone.count(kC8FirstDff));
  EXPECT_TRUE(cone.count(kC8SecondDff));
}

TEST(Netlist, ProtectionPairCellsAreExclusiveToTheirChannel) {
  const Netlist net = build_rm13_reference();
  const auto cones = net.output_cones_by_cell();
  for (const auto& pair : rm13_protection_pairs()) {
    EXPECT_EQ(cones.at(pair.cell_a),
              std::set<std::string>{pair.channel}) << pair.cell_a;
    EXPECT_EQ(cones.at(pair.cell_b),
              std::set<std::string>{pair.channel}) << pair.cell_b;
    // The pair shares one clock parent.
    const Cell& a = net.cell(pair.cell_a);
    const Cell& b = net.cell(pair.cell_b);
    const Cell& spl = net.cell(pair.clock_splitter);
    EXPECT_TRUE((spl.outputs[0] == a.clock && spl.outputs[1] == b.clock) ||
                (spl.outputs[0] == b.clock && spl.outputs[1] == a.clock));
  }
}

TEST(Netlist, SerializeParseRoundTrip) {
  const Netlist net = build_rm13_reference();
  const Netlist reparsed = Netlist::parse(net.serialize());
  EXPECT_TRUE(net == reparsed);
  EXPECT_EQ(net.serialize(), reparsed.serialize());
}

TEST(Netlist, BundledFileMatchesBuilder) {
  const Netlist from_file = Netlist::parse_file(data_file("rm13.net"));
  EXPECT_TRUE(from_file == build_rm13_reference());
}

TEST(Netlist, AggregateDataRateIsDerivedFromChannelsAndClock) {
  const Netlist net = build_rm13_reference();
  const double derived =
      static_cast<double>(net.output_ports().size()) * SimConfig{}.clock_freq_hz;
  EXPECT_DOUBLE_EQ(derived, kRm13AggregateDataRateBps);
}

TEST(Netlist, NoEncoderReference) {
  const Netlist net = build_no_encoder_reference();
  const CellCensus c = net.census();
  EXPECT_EQ(c.total(), 4);
  EXPECT_EQ(c.sfq2dc_count, 4);
  EXPECT_EQ(net.pipeline_latency(), 0);
  EXPECT_EQ(net.fault_eligible_cells().size(), 4u);
}

TEST(NetlistParse, EmptyFileHasNoCells) {
  try {
    Netlist::parse("# only a comment\n\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("no cells"), std::string::npos);
  }
}

TEST(NetlistParse, MultiDriverNamesTheNet) {
  const char* text =
      "a SFQ2DC in=M1 out=n1\n"
      "b SFQ2DC in=M2 out=n1\n"
      "c SFQ2DC in=n1 out=C1\n";
  try {
    Netlist::parse(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("multi-driver net 'n1'"),
              std::string::npos);
  }
}

TEST(NetlistParse, FanOutViolation) {
  const char* text =
      "a SFQ2DC in=M1 out=n1\n"
      "b SFQ2DC in=n1 out=C1\n"
      "c SFQ2DC in=n1 out=C2\n";
  EXPECT_THROW(Netlist::parse(text), ValidationError);
}

TEST(NetlistParse, DanglingNet) {
  const char* text =
      "a SFQ2DC in=M1 out=C1\n"
      "b SFQ2DC in=M2 out=n_unused\n";
  try {
    Netlist::parse(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("dangling net 'n_unused'"),
              std::string::npos);
  }
}

TEST(NetlistParse, UnclockedXorIsRejectedWithLineNumber) {
  const char* text =
      "s SPLITTER in=M1 out=a,b\n"
      "x XOR in=a,b out=C1\n";
  try {
    Netlist::parse(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("unclocked XOR"), std::string::npos);
  }
}

TEST(NetlistParse, SyntaxErrorsCarryLineNumbers) {
  try {
    Netlist::parse("a SFQ2DC in=M1 out=C1\nb FROB in=M2 out=C2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(Netlist::parse("a\n"), ParseError);
  EXPECT_THROW(Netlist::parse("a SFQ2DC in=\n"), ParseError);
  EXPECT_THROW(Netlist::parse("a SFQ2DC input=M1 out=C1\n"), ParseError);
  EXPECT_THROW(Netlist::parse("a SFQ2DC in=M1 in=M2 out=C1\n"), ParseError);
}

TEST(NetlistParse, DuplicateCellId) {
  const char* text =
      "a SFQ2DC in=M1 out=C1\n"
      "a SFQ2DC in=M2 out=C2\n";
  try {
    Netlist::parse(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("duplicate cell id"), std::string::npos);
  }
}

TEST(NetlistParse, ClockMustComeFromClockTree) {
  // DFF clocked from a data splitter output.
  const char* text =
      "spl SPLITTER in=M1 out=d,ck\n"
      "ff DFF in=d clk=ck out=C1\n";
  EXPECT_THROW(Netlist::parse(text), ValidationError);
}

TEST(NetlistParse, ClockSplitterMustNotDriveData) {
  const char* text =
      "cs SPLITTER in=CLK out=ck1,bad\n"
      "ff DFF in=M1 clk=ck1 out=n1\n"
      "sink SFQ2DC in=bad out=C1\n"
      "sink2 SFQ2DC in=n1 out=C2\n";
  EXPECT_THROW(Netlist::parse(text), ValidationError);
}

TEST(NetlistParse, CycleIsRejected) {
  const char* text =
      "s SPLITTER in=n2 out=n1,n2\n"
      "c SFQ2DC in=n1 out=C1\n"
      "d SFQ2DC in=M1 out=C2\n";
  EXPECT_THROW(Netlist::parse(text), ValidationError);
}

TEST(NetlistParse, PortsMustBeContiguous) {
  EXPECT_THROW(Netlist::parse("a SFQ2DC in=M2 out=C1\n"), ValidationError);
  EXPECT_THROW(Netlist::parse("a SFQ2DC in=M1 out=C2\n"), ValidationError);
}

TEST(NetlistParse, UnbalancedPathsAreRejected) {
  // M1 reaches C1 through one clocked cell, M2 through none.
  const char* text =
      "cs SPLITTER in=CLK out=ck1,ck2\n"
      "ff DFF in=M1 clk=ck1 out=n1\n"
      "ff2 DFF in=n1 clk=ck2 out=C1\n"
      "b SFQ2DC in=M2 out=C2\n";
  try {
    Netlist::parse(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unbalanced"), std::string::npos);
  }
}

TEST(NetlistParse, CommentsAndBlankLinesIgnored) {
  const Netlist net = Netlist::parse(
      "# header\n"
      "\n"
      "a SFQ2DC in=M1 out=C1  # trailing comment\n");
  EXPECT_EQ(net.cells().size(), 1u);
  EXPECT_EQ(net.cell("a").line, 3);
}
