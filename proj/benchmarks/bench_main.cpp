#include <benchmark/benchmark.h>

#include "sfqrm/census.h"
#include "sfqrm/experiment.h"
#include "sfqrm/gate_sim.h"
#include "sfqrm/rm13.h"
#include "sfqrm/rm_code.h"

namespace {

using namespace sfqrm;

std::vector<BitBlock> all16() {
  std::vector<BitBlock> m;
  for (int v = 0; v < 16; ++v) {
    std::vector<std::uint8_t> bits(4);
    for (int i = 0; i < 4; ++i) {
      bits[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>((v >> (3 - i)) & 1);
    }
    m.emplace_back(std::move(bits), BlockRole::kMessage);
  }
  return m;
}

void BM_Encode(benchmark::State& state) {
  const RmCode& code = rm13();
  const auto messages = all16();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(code, messages[i++ % 16]));
  }
}
BENCHMARK(BM_Encode);

void BM_DecodeSingleError(benchmark::State& state) {
  const RmCode& code = rm13();
  auto word = encode(code, all16()[10]);
  word.set_bit(3, word.bit(3) ^ 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(code, word));
  }
}
BENCHMARK(BM_DecodeSingleError);

void BM_SimulateStream16(benchmark::State& state) {
  const Netlist net = build_rm13_reference();
  const SimConfig cfg;
  const auto messages = all16();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(net, FaultPlan{}, messages, cfg));
  }
}
BENCHMARK(BM_SimulateStream16);

void BM_Realization100Messages(benchmark::State& state) {
  ExperimentSpec spec;
  spec.arm = Arm::kRm13AfterEcc;
  spec.realizations = 1;
  spec.messages_per_realization = 100;
  spec.fault_prob = 0.01;
  spec.spread = SpreadModel::calibrated();
  for (auto _ : state) {
    spec.seed += 1;
    benchmark::DoNotOptimize(run_realizations(spec, 1));
  }
}
BENCHMARK(BM_Realization100Messages);

void BM_FaultCensusSize1(benchmark::State& state) {
  const Netlist net = build_rm13_reference();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fault_tolerance_census(net, 1));
  }
}
BENCHMARK(BM_FaultCensusSize1);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
