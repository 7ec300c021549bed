#include "sfqrm/rm_code.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

using namespace sfqrm;

namespace {

BitBlock message_of(int value, int k) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    bits[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((value >> (k - 1 - i)) & 1);
  }
  return BitBlock(std::move(bits), BlockRole::kMessage);
}

std::vector<BitBlock> all_codewords(const RmCode& code) {
  std::vector<BitBlock> words;
  for (int v = 0; v < (1 << code.message_length); ++v) {
    words.push_back(encode(code, message_of(v, code.message_length)));
  }
  return words;
}

// Independent oracle: minimum nonzero codeword weight by full enumeration.
int brute_force_min_distance(const RmCode& code) {
  int best = code.block_length + 1;
  for (const auto& w : all_codewords(code)) {
    const int weight = w.weight();
    if (weight > 0 && weight < best) best = weight;
  }
  return best;
}

// GF(2) row rank of the generator.
int generator_rank(const RmCode& code) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& r : code.generator) rows.push_back(r.bits());
  int rank = 0;
  for (int col = 0; col < code.block_length && rank < (int)rows.size(); ++col) {
    int pivot = -1;
    for (int r = rank; r < (int)rows.size(); ++r) {
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)],
              rows[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (r != rank && rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) {
        for (int c = 0; c < code.block_length; ++c) {
          rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ^=
              rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        }
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(RmCode, Rm13GeneratorIsCanonical) {
  const RmCode& code = rm13();
  EXPECT_EQ(code.message_length, 4);
  EXPECT_EQ(code.block_length, 8);
  EXPECT_EQ(code.min_distance, 4);
  ASSERT_EQ(code.generator.size(), 4u);
  EXPECT_EQ(code.generator[0].to_string(), "11111111");
  EXPECT_EQ(code.generator[1].to_string(), "11110000");
  EXPECT_EQ(code.generator[2].to_string(), "11001100");
  EXPECT_EQ(code.generator[3].to_string(), "10101010");
}

TEST(RmCode, Rm03IsRepetitionCode) {
  const RmCode code = build_rm_code(0, 3);
  EXPECT_EQ(code.message_length, 1);
  EXPECT_EQ(code.block_length, 8);
  ASSERT_EQ(code.generator.size(), 1u);
  EXPECT_EQ(code.generator[0].to_string(), "11111111");
}

TEST(RmCode, ParametersMatchBinomialSums) {
  const RmCode rm14 = build_rm_code(1, 4);
  EXPECT_EQ(rm14.message_length, 5);
  EXPECT_EQ(rm14.block_length, 16);
  const RmCode rm24 = build_rm_code(2, 4);
  EXPECT_EQ(rm24.message_length, 11);
}

TEST(RmCode, BruteForceMinDistanceMatchesFormula) {
  for (const auto& [r, m] : std::vector<std::pair<int, int>>{{1, 3}, {0, 3}, {1, 4}}) {
    const RmCode code = build_rm_code(r, m);
    EXPECT_EQ(brute_force_min_distance(code), 1 << (m - r)) << "RM(" << r << "," << m << ")";
    EXPECT_EQ(brute_force_min_distance(code), code.min_distance);
  }
}

TEST(RmCode, GeneratorRowsAreIndependentCodewords) {
  for (const auto& [r, m] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}}) {
    const RmCode code = build_rm_code(r, m);
    EXPECT_EQ(generator_rank(code), code.message_length);
  }
}

TEST(RmCode, BuildRejectsBadParameters) {
  EXPECT_THROW(build_rm_code(2, 1), std::invalid_argument);
  EXPECT_THROW(build_rm_code(0, 0), std::invalid_argument);
  EXPECT_THROW(build_rm_code(-1, 3), std::invalid_argument);
  EXPECT_THROW(build_rm_code(1, 17), std::invalid_argument);
}

TEST(RmCode, EncodeCanonicalExamples) {
  const RmCode& code = rm13();
  EXPECT_EQ(encode(code, BitBlock::from_string("1010", BlockRole::kMessage)).to_string(),
            "00110011");
  EXPECT_EQ(encode(code, BitBlock::from_string("0000", BlockRole::kMessage)).to_string(),
            "00000000");
}

TEST(RmCode, EncodeMatchesXorOracleOnAllMessages) {
  const RmCode& code = rm13();
  for (int v = 0; v < 16; ++v) {
    const BitBlock m = message_of(v, 4);
    EXPECT_EQ(encode(code, m), encode_xor_oracle(m)) << m.to_string();
  }
}

TEST(RmCode, XorOracleUnitMessages) {
  EXPECT_EQ(encode_xor_oracle(BitBlock::from_string("1010", BlockRole::kMessage)).to_string(),
            "00110011");
  EXPECT_EQ(encode_xor_oracle(BitBlock::from_string("1000", BlockRole::kMessage)).to_string(),
            "11111111");
  EXPECT_EQ(encode_xor_oracle(BitBlock::from_string("0001", BlockRole::kMessage)).to_string(),
            "10101010");
}

TEST(RmCode, EncodeIsLinear) {
  const RmCode& code = rm13();
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const BitBlock ma = message_of(a, 4), mb = message_of(b, 4);
      EXPECT_EQ(encode(code, ma) ^ encode(code, mb), encode(code, ma ^ mb));
    }
  }
  // Randomized at larger k.
  const RmCode rm14 = build_rm_code(1, 4);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const BitBlock ma = message_of(static_cast<int>(rng() % 32), 5);
    const BitBlock mb = message_of(static_cast<int>(rng() % 32), 5);
    EXPECT_EQ(encode(rm14, ma) ^ encode(rm14, mb), encode(rm14, ma ^ mb));
  }
}

TEST(RmCode, EncodeRejectsLengthMismatch) {
  EXPECT_THROW(encode(rm13(), BitBlock::from_string("101", BlockRole::kMessage)),
               std::invalid_argument);
  EXPECT_THROW(encode_xor_oracle(BitBlock::from_string("10100", BlockRole::kMessage)),
               std::invalid_argument);
}

TEST(RmDecode, RoundTripAllMessagesClean) {
  const RmCode& code = rm13();
  for (int v = 0; v < 16; ++v) {
    const BitBlock m = message_of(v, 4);
    const DecodeOutcome out = decode(code, encode(code, m));
    EXPECT_EQ(out.status, DecodeStatus::kClean);
    ASSERT_TRUE(out.decoded.has_value());
    EXPECT_EQ(*out.decoded, m);
    EXPECT_TRUE(out.corrected_positions.empty());
  }
}

TEST(RmDecode, CorrectsEverySingleBitError) {
  const RmCode& code = rm13();
  int corrected = 0;
  for (int v = 0; v < 16; ++v) {
    const BitBlock m = message_of(v, 4);
    const BitBlock c = encode(code, m);
    for (int p = 1; p <= 8; ++p) {
      BitBlock corrupted = c;
      corrupted.set_bit(static_cast<std::size_t>(p),
                        corrupted.bit(static_cast<std::size_t>(p)) ^ 1);
      const DecodeOutcome out = decode(code, corrupted);
      ASSERT_EQ(out.status, DecodeStatus::kCorrected);
      ASSERT_TRUE(out.decoded.has_value());
      EXPECT_EQ(*out.decoded, m);
      EXPECT_EQ(out.corrected_positions, std::vector<int>{p});
      ++corrected;
    }
  }
  EXPECT_EQ(corrected, 128);
}

TEST(RmDecode, CanonicalExample) {
  const DecodeOutcome out =
      decode(rm13(), BitBlock::from_string("10110011", BlockRole::kCodeword));
  ASSERT_EQ(out.status, DecodeStatus::kCorrected);
  EXPECT_EQ(out.decoded->to_string(), "1010");
  EXPECT_EQ(out.corrected_positions, std::vector<int>{1});
}

TEST(RmDecode, DetectOnlyFlagsAllErrorsUpToWeight3) {
  const RmCode& code = rm13();
  int checked = 0;
  for (int v = 0; v < 16; ++v) {
    const BitBlock c = encode(code, message_of(v, 4));
    for (int pattern = 1; pattern < 256; ++pattern) {
      if (__builtin_popcount(static_cast<unsigned>(pattern)) > 3) continue;
      BitBlock corrupted = c;
      for (int j = 0; j < 8; ++j) {
        if (pattern & (1 << j)) {
          corrupted.set_bit(static_cast<std::size_t>(j + 1),
                            corrupted.bit(static_cast<std::size_t>(j + 1)) ^ 1);
        }
      }
      EXPECT_EQ(decode(code, corrupted, DecodeMode::kDetectOnly).status,
                DecodeStatus::kDetectedUncorrectable);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 16 * (8 + 28 + 56));
}

TEST(RmDecode, DetectOnlyAcceptsCodewords) {
  const RmCode& code = rm13();
  for (int v = 0; v < 16; ++v) {
    const BitBlock m = message_of(v, 4);
    const DecodeOutcome out = decode(code, encode(code, m), DecodeMode::kDetectOnly);
    EXPECT_EQ(out.status, DecodeStatus::kClean);
    EXPECT_EQ(*out.decoded, m);
  }
}

TEST(RmDecode, Weight2NeverMiscorrects) {
  // d_min = 4, so no weight-2 pattern can land within distance 1 of another
  // codeword; every one of the 16 * C(8,2) cases must be flagged.
  const RmCode& code = rm13();
  for (int v = 0; v < 16; ++v) {
    const BitBlock c = encode(code, message_of(v, 4));
    for (int i = 1; i <= 8; ++i) {
      for (int j = i + 1; j <= 8; ++j) {
        BitBlock corrupted = c;
        corrupted.set_bit(static_cast<std::size_t>(i), corrupted.bit(static_cast<std::size_t>(i)) ^ 1);
        corrupted.set_bit(static_cast<std::size_t>(j), corrupted.bit(static_cast<std::size_t>(j)) ^ 1);
        EXPECT_EQ(decode(code, corrupted).status,
                  DecodeStatus::kDetectedUncorrectable);
      }
    }
  }
}

TEST(RmDecode, RejectsBadInputs) {
  EXPECT_THROW(decode(rm13(), BitBlock::from_string("0011", BlockRole::kCodeword)),
               std::invalid_argument);
  const RmCode rm24 = build_rm_code(2, 4);
  EXPECT_THROW(decode(rm24, BitBlock::zeros(16, BlockRole::kCodeword)),
               std::invalid_argument);
}

TEST(RmDecode, RepetitionCodeSingleError) {
  const RmCode code = build_rm_code(0, 3);
  BitBlock received = BitBlock::from_string("11101111", BlockRole::kCodeword);
  const DecodeOutcome out = decode(code, received);
  ASSERT_EQ(out.status, DecodeStatus::kCorrected);
  EXPECT_EQ(out.decoded->to_string(), "1");
  EXPECT_EQ(out.corrected_positions, std::vector<int>{4});
}

TEST(RmCensus, ClassifiesEveryPatternUpToWeight3) {
  const auto table = error_pattern_census(rm13(), 3);
  ASSERT_EQ(table.size(), 4u);

  EXPECT_EQ(table.at(0).corrected_ok, 16);
  EXPECT_EQ(table.at(0).miscorrected, 0);
  EXPECT_EQ(table.at(0).detected, 0);

  EXPECT_EQ(table.at(1).corrected_ok, 128);
  EXPECT_EQ(table.at(1).miscorrected, 0);
  EXPECT_EQ(table.at(1).detected, 0);

  EXPECT_EQ(table.at(2).corrected_ok, 0);
  EXPECT_EQ(table.at(2).miscorrected, 0);
  EXPECT_EQ(table.at(2).detected, 448);

  // Every weight-3 pattern sits at distance 1 from exactly one other
  // codeword (14 weight-4 codeword differences x 4 support bits = C(8,3)),
  // so correct-mode decoding miscorrects all of them.
  EXPECT_EQ(table.at(3).corrected_ok, 0);
  EXPECT_EQ(table.at(3).miscorrected, 896);
  EXPECT_EQ(table.at(3).detected, 0);

  for (const auto& [w, row] : table) {
    long total = row.corrected_ok + row.miscorrected + row.detected;
    long expect = 16;
    // 16 codewords x C(8, w) patterns.
    const long choose[] = {1, 8, 28, 56};
    expect *= choose[w];
    EXPECT_EQ(total, expect) << "weight " << w;
  }
}

TEST(RmCensus, GuardsResourceBounds) {
  EXPECT_THROW(error_pattern_census(rm13(), 9), std::invalid_argument);
  EXPECT_THROW(error_pattern_census(build_rm_code(1, 5), 1), std::invalid_argument);
}
