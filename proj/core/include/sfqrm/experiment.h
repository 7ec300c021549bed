#ifndef SFQRM_EXPERIMENT_H
#define SFQRM_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfqrm/bit_block.h"
#include "sfqrm/fault.h"
#include "sfqrm/gate_sim.h"

namespace sfqrm {

// Which pipeline a realization is scored against:
//   kRm13AfterEcc:  a message is erroneous iff the majority-logic decode of
//                   the received codeword differs from the original message
//                   (decoder failures count as erroneous).
//   kRm13BeforeEcc: erroneous iff the received 8-bit codeword differs from
//                   the transmitted one.
//   kNoEncoder:     bare 4-converter link; erroneous iff the received bits
//                   differ from the message.
enum class Arm { kRm13AfterEcc, kRm13BeforeEcc, kNoEncoder };

std::string_view to_string(Arm arm);
std::optional<Arm> arm_from(std::string_view name);

struct ExperimentSpec {
  Arm arm = Arm::kRm13AfterEcc;
  int realizations = 1000;
  int messages_per_realization = 100;
  double fault_prob = 0.0;  // per-cell open-fault probability
  std::optional<SpreadModel> spread;
  std::uint64_t seed = 0;
  SimConfig sim;

  void validate() const;
};

// Empirical CDF of the number of erroneous messages per realization.
// Counts are kept exact (cumulative realization counts), probabilities are
// derived, so equality and file round-trips are exact.
struct CdfTable {
  struct Point {
    int n_err = 0;
    long cum_count = 0;
    bool operator==(const Point&) const = default;
  };
  struct Meta {
    std::string arm;
    std::uint64_t seed = 0;
    double fault_prob = 0.0;
    std::optional<double> spread_pct;
    int realizations = 0;
    int messages = 0;
    bool operator==(const Meta&) const = default;
  };

  std::vector<Point> points;  // ascending n_err, strictly increasing counts
  Meta meta;

  double cum_prob(std::size_t idx) const;
  // P(N_err = 0); zero when 0 is not in the support.
  double p_zero() const;
  // P(N_err <= x).
  double cdf_at(int x) const;

  std::string to_csv() const;
  std::string to_json() const;
  static CdfTable from_csv(std::string_view text);   // throws ParseError
  static CdfTable from_json(std::string_view text);  // throws ParseError

  bool operator==(const CdfTable&) const = default;
};

// True iff P(N <= x | a) >= P(N <= x | b) for every x.
bool cdf_dominates(const CdfTable& a, const CdfTable& b);

// messages uniform over all k-bit values, deterministic in the seed.
std::vector<BitBlock> random_messages(int count, int bits, std::uint64_t seed);

// Per-realization erroneous-message counts. Realization r derives its fault
// and message seeds from (spec.seed, r) alone, so the result is independent
// of worker count and scheduling. The message stream depends only on
// (seed, r), never on the arm: arms sharing a seed see identical traffic.
std::vector<int> run_realizations(const ExperimentSpec& spec, int workers = 1);

CdfTable run_experiment(const ExperimentSpec& spec, int workers = 1);

CdfTable make_cdf_table(const ExperimentSpec& spec,
                        std::span<const int> n_err_per_realization);

struct ArmComparison {
  std::vector<ExperimentSpec> specs;
  std::vector<CdfTable> tables;         // parallel to specs
  std::vector<std::vector<int>> n_err;  // parallel to specs
  // Realizations where N_err(after_ecc) > N_err(before_ecc); present only
  // when both rm13 arms were compared. Decoding can fix a codeword or leave
  // it, never corrupt a correct one, so this must be zero.
  std::optional<int> dominance_violations;
};

// Runs the specs (which must differ only in arm) under common random
// numbers. Throws std::invalid_argument on non-comparable specs.
ArmComparison compare_arms(std::span<const ExperimentSpec> specs,
                           int workers = 1);

}  // namespace sfqrm

#endif  // SFQRM_EXPERIMENT_H
