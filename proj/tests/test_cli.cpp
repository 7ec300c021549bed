// Shell-level tests of the sfqrm binary: output contracts and exit codes.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sfqrm/rm_code.h"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SFQRM_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) {
    result.output += buf.data();
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("sfqrm_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string bundled_netlist() {
  return std::string(SFQRM_DATA_DIR) + "/rm13.net";
}

}  // namespace

TEST(CliEncode, CanonicalMessage) {
  const auto r = run_cli("encode 1010");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "00110011\n");
}

TEST(CliEncode, ZeroMessage) {
  const auto r = run_cli("encode 0000");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "00000000\n");
}

TEST(CliEncode, GeneralCodeParameters) {
  const auto r = run_cli("encode --rm 1,4 10101");
  EXPECT_EQ(r.exit_code, 0);
  const auto code = sfqrm::build_rm_code(1, 4);
  const auto expect = sfqrm::encode(
      code, sfqrm::BitBlock::from_string("10101", sfqrm::BlockRole::kMessage));
  EXPECT_EQ(r.output, expect.to_string() + "\n");
}

TEST(CliEncode, MalformedBitsIsUsageError) {
  EXPECT_EQ(run_cli("encode 10x0").exit_code, 1);
  EXPECT_EQ(run_cli("encode 101").exit_code, 1);
  EXPECT_EQ(run_cli("encode").exit_code, 1);
}

TEST(CliDecode, CleanCorrectedDetected) {
  auto r = run_cli("decode 00110011");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "1010 clean\n");

  r = run_cli("decode 10110011");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "1010 corrected @1\n");

  r = run_cli("decode --mode detect_only 10110011");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "detected_uncorrectable\n");
}

TEST(CliDecode, MalformedInput) {
  EXPECT_EQ(run_cli("decode 0011001").exit_code, 1);
  EXPECT_EQ(run_cli("decode --mode bogus 00110011").exit_code, 1);
}

TEST(CliRoundTrip, EncodeThenDecodeIsIdentity) {
  for (int v = 0; v < 16; ++v) {
    std::string bits;
    for (int i = 3; i >= 0; --i) bits += ((v >> i) & 1) ? '1' : '0';
    const auto encoded = run_cli("encode " + bits);
    ASSERT_EQ(encoded.exit_code, 0);
    std::string codeword = encoded.output;
    codeword.pop_back();  // trailing newline
    const auto decoded = run_cli("decode " + codeword);
    ASSERT_EQ(decoded.exit_code, 0);
    EXPECT_EQ(decoded.output, bits + " clean\n");
  }
}

TEST(CliSimulate, BuiltinFaultFree) {
  const auto r = run_cli("simulate --builtin rm13 --messages 1010");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("0 1010 00110011 00110011 ok"), std::string::npos);
}

TEST(CliSimulate, C8DffPairFault) {
  const auto r = run_cli(
      "simulate --builtin rm13 --messages 1000 "
      "--faults '{\"open_cells\":[\"dff_c8_1\",\"dff_c8_2\"]}'");
  EXPECT_EQ(r.exit_code, 0);
  // 1000 encodes to all-ones; only c8 is lost.
  EXPECT_NE(r.output.find("0 1000 11111111 11111110 errors=1"), std::string::npos);
}

TEST(CliSimulate, EmptyMessageListIsOk) {
  const auto r = run_cli("simulate --builtin rm13");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "# idx message transmitted received status\n");
}

TEST(CliSimulate, WritesTraceCsv) {
  const fs::path dir = temp_dir("trace");
  const fs::path trace = dir / "trace.csv";
  const auto r = run_cli("simulate --builtin rm13 --messages 1010 --trace " +
                         trace.string());
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = slurp(trace);
  EXPECT_EQ(csv.rfind("time_ns,channel,level\n", 0), 0u);
  fs::remove_all(dir);
}

TEST(CliSimulate, BadFaultJsonIsDataError) {
  EXPECT_EQ(run_cli("simulate --builtin rm13 --messages 1010 --faults {bad").exit_code, 2);
  EXPECT_EQ(run_cli("simulate --builtin rm13 --messages 1010 "
                    "--faults '{\"open_cells\":[\"nope\"]}'").exit_code, 2);
}

TEST(CliValidate, BundledNetlistIsClean) {
  const auto r = run_cli("validate --netlist " + bundled_netlist());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("8 XOR, 7 DFF, 26 SPLITTER of which 14 clock"),
            std::string::npos);
}

TEST(CliValidate, BrokenNetlistIsDataErrorWithLineNumber) {
  const fs::path dir = temp_dir("validate");
  const fs::path bad = dir / "bad.net";
  std::ofstream(bad) << "a SFQ2DC in=M1 out=C1\nb XOR in=M2,M3 out=C2\n";
  const auto r = run_cli("validate --netlist " + bad.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("line 2"), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliValidate, MissingFileIsIoError) {
  EXPECT_EQ(run_cli("validate --netlist /no/such/file.net").exit_code, 3);
}

TEST(CliMontecarlo, UnitStepAtZeroFaults) {
  const fs::path dir = temp_dir("mc0");
  const auto r = run_cli("montecarlo --arm rm13_after_ecc --realizations 10 "
                         "--messages 5 --fault-prob 0 --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = slurp(dir / "cdf_rm13_after_ecc_p0_ppvoff.csv");
  EXPECT_NE(csv.find("n_err,cum_prob\n0,1\n"), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliMontecarlo, DeterministicAcrossRunsAndThreads) {
  const fs::path dir1 = temp_dir("mc_a");
  const fs::path dir2 = temp_dir("mc_b");
  const std::string args =
      "montecarlo --arm all --realizations 30 --messages 10 --fault-prob 0.01 "
      "--ppv 0.2 --seed 7 ";
  EXPECT_EQ(run_cli(args + "--threads 1 --out " + dir1.string()).exit_code, 0);
  EXPECT_EQ(run_cli(args + "--threads 2 --out " + dir2.string()).exit_code, 0);
  for (const auto& entry : fs::directory_iterator(dir1)) {
    const auto name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(dir2 / name)) << name;
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST(CliMontecarlo, ReportsDominanceAndZeroErrorProbability) {
  const fs::path dir = temp_dir("mc_all");
  const auto r = run_cli("montecarlo --arm all --realizations 40 --messages 10 "
                         "--ppv 0.2 --seed 3 --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("ECC dominance: after_ecc <= before_ecc on 40/40"),
            std::string::npos);
  EXPECT_NE(r.output.find("P(N_err=0) rm13_after_ecc"), std::string::npos);
  EXPECT_NE(r.output.find("P(N_err=0) no_encoder"), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliMontecarlo, ConfigFileSuppliesDefaults) {
  const fs::path dir = temp_dir("mc_cfg");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << "{\"realizations\": 5, \"messages\": 4, \"seed\": 9, "
                        "\"arm\": \"no_encoder\", \"out\": \"" << dir.string()
                     << "\"}";
  const auto r = run_cli("--config " + cfg.string() + " montecarlo");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(fs::exists(dir / "cdf_no_encoder_p0_ppvoff.csv"));
  const std::string csv = slurp(dir / "cdf_no_encoder_p0_ppvoff.csv");
  EXPECT_NE(csv.find("# seed=9"), std::string::npos);
  EXPECT_NE(csv.find("# realizations=5"), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliMontecarlo, GlobalSeedAndOutFlags) {
  const fs::path dir = temp_dir("mc_global");
  const auto r = run_cli("--seed 9 --out " + dir.string() +
                         " montecarlo --arm no_encoder --realizations 5 --messages 4");
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = slurp(dir / "cdf_no_encoder_p0_ppvoff.csv");
  EXPECT_NE(csv.find("# seed=9"), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliCensus, SingletonCensus) {
  const fs::path dir = temp_dir("census1");
  const auto r = run_cli("census --max-size 1 --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("size 1: 49 sets, 0 harmless, 24 correctable, 25 uncorrectable"),
            std::string::npos);
  const std::string csv = slurp(dir / "census_size1.csv");
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  EXPECT_EQ(rows, 2u + 1u + 49u);
  fs::remove_all(dir);
}

TEST(CliCensus, PairCensusListsC8DffPairAsCorrectable) {
  const fs::path dir = temp_dir("census2");
  const auto r = run_cli("census --max-size 2 --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = slurp(dir / "census_size2.csv");
  EXPECT_NE(csv.find("2,dff_c8_1+dff_c8_2,1,correctable"), std::string::npos);
  fs::remove_all(dir);
}

TEST(CliMontecarlo, FaultProbSweepReportsOrdering) {
  const fs::path dir = temp_dir("mc_sweep");
  const auto r = run_cli(
      "montecarlo --arm rm13_after_ecc --realizations 60 --messages 10 "
      "--fault-prob 0.001,0.01,0.02 --seed 7 --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("CDF ordering across fault probabilities: pointwise ordered"),
            std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "cdf_rm13_after_ecc_p0.001_ppvoff.csv"));
  EXPECT_TRUE(fs::exists(dir / "cdf_rm13_after_ecc_p0.02_ppvoff.json"));
  fs::remove_all(dir);
}

TEST(CliMontecarlo, OutOfRangeFlagsAreUsageErrors) {
  EXPECT_EQ(run_cli("montecarlo --fault-prob 1.5 --realizations 5 --messages 2").exit_code, 1);
  EXPECT_EQ(run_cli("montecarlo --ppv 0.9 --realizations 5 --messages 2").exit_code, 1);
}

TEST(CliCensus, EmptyAndGuarded) {
  const fs::path dir = temp_dir("census0");
  EXPECT_EQ(run_cli("census --max-size 0 --out " + dir.string()).exit_code, 0);
  EXPECT_EQ(run_cli("census --max-size 4 --out " + dir.string()).exit_code, 1);
  fs::remove_all(dir);
}

TEST(Cli, UnknownFlagsAndSubcommandsAreUsageErrors) {
  EXPECT_EQ(run_cli("frobnicate").exit_code, 1);
  EXPECT_EQ(run_cli("encode 1010 --bogus").exit_code, 1);
  EXPECT_EQ(run_cli("").exit_code, 1);
}
