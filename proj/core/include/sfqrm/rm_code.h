#ifndef SFQRM_RM_CODE_H
#define SFQRM_RM_CODE_H

#include <map>
#include <optional>
#include <vector>

#include "sfqrm/bit_block.h"

namespace sfqrm {

// Reed-Muller code RM(r, m): block length n = 2^m, message length
// k = sum_{i<=r} C(m, i), minimum distance 2^(m-r). Generator rows are the
// evaluation vectors of the monomials of degree <= r, ordered by degree and
// then lexicographically by variable index, so RM(1,3) comes out as
//   1 1 1 1 1 1 1 1
//   1 1 1 1 0 0 0 0
//   1 1 0 0 1 1 0 0
//   1 0 1 0 1 0 1 0
struct RmCode {
  int order = 0;           // r
  int log_length = 0;      // m
  int block_length = 0;    // n = 2^m
  int message_length = 0;  // k
  int min_distance = 0;    // 2^(m-r)
  std::vector<BitBlock> generator;  // k rows of length n
};

// Throws std::invalid_argument unless 0 <= r <= m and 1 <= m <= 16.
RmCode build_rm_code(int order, int log_length);

// The canonical RM(1,3) instance used by the encoder netlist.
const RmCode& rm13();

// message * G over GF(2). Throws on message length != k.
BitBlock encode(const RmCode& code, const BitBlock& message);

// Literal per-bit XOR expansion of the RM(1,3) encoding:
//   c1 = m1^m2^m3^m4, c2 = m1^m2^m3, c3 = m1^m2^m4, c4 = m1^m2,
//   c5 = m1^m3^m4,    c6 = m1^m3,    c7 = m1^m4,    c8 = m1.
// Kept as an independent cross-check for encode() and for the gate-level
// simulator; intentionally does not touch the generator matrix.
BitBlock encode_xor_oracle(const BitBlock& message);

enum class DecodeMode { kCorrect, kDetectOnly };
enum class DecodeStatus { kClean, kCorrected, kDetectedUncorrectable };

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::kDetectedUncorrectable;
  // Absent when status is kDetectedUncorrectable.
  std::optional<BitBlock> decoded;
  // 1-based codeword positions repaired; empty unless status is kCorrected.
  std::vector<int> corrected_positions;
};

// Majority-logic (Reed) decoding for first-order codes (r <= 1).
//
// kCorrect: each first-order coefficient is recovered by majority vote over
// its 2^(m-1) disjoint parity pairs; the constant term comes from the
// residual. A tie in any vote is surfaced as kDetectedUncorrectable, never
// silently guessed. The decoded word is re-encoded: 0 mismatches -> kClean,
// exactly 1 -> kCorrected, 2 or more -> kDetectedUncorrectable.
//
// kDetectOnly: kClean iff the received word is a codeword.
//
// Throws std::invalid_argument on length mismatch or order > 1.
DecodeOutcome decode(const RmCode& code, const BitBlock& received,
                     DecodeMode mode = DecodeMode::kCorrect);

struct ErrorPatternCounts {
  long corrected_ok = 0;   // decoded message equals the original
  long miscorrected = 0;   // decoder returned a wrong message (false positive)
  long detected = 0;       // flagged uncorrectable
};

// Exhaustive classification of every error pattern of weight <= max_weight
// against every codeword under kCorrect decoding, keyed by pattern weight.
// Guarded to n <= 16.
std::map<int, ErrorPatternCounts> error_pattern_census(const RmCode& code,
                                                       int max_weight);

}  // namespace sfqrm

#endif  // SFQRM_RM_CODE_H
