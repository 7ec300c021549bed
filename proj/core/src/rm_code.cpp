#include "sfqrm/rm_code.h"

#include <algorithm>
#include <stdexcept>

namespace sfqrm {
namespace {

// Evaluation of variable x_i (1-based, x_1 most significant) at column j:
// columns enumerate the 2^m points so that x_i reads 1 on the first half of
// its period. Equivalent to taking bit (m-i) of the complemented index.
int variable_at(int i, int column, int m) {
  return (~column >> (m - i)) & 1;
}

std::vector<std::vector<int>> monomials_up_to(int order, int m) {
  std::vector<std::vector<int>> out;
  out.push_back({});  // degree 0
  std::vector<int> combo;
  // Degree-d monomials in lexicographic order of their variable tuples.
  for (int d = 1; d <= order; ++d) {
    combo.assign(d, 0);
    for (int i = 0; i < d; ++i) combo[i] = i + 1;
    while (true) {
      out.push_back(combo);
      int pos = d - 1;
      while (pos >= 0 && combo[pos] == m - (d - 1 - pos)) --pos;
      if (pos < 0) break;
      ++combo[pos];
      for (int i = pos + 1; i < d; ++i) combo[i] = combo[i - 1] + 1;
    }
  }
  return out;
}

}  // namespace

RmCode build_rm_code(int order, int log_length) {
  if (log_length < 1 || log_length > 16 || order < 0 || order > log_length) {
    throw std::invalid_argument(
        "build_rm_code: require 0 <= r <= m and 1 <= m <= 16");
  }
  RmCode code;
  code.order = order;
  code.log_length = log_length;
  code.block_length = 1 << log_length;
  code.min_distance = 1 << (log_length - order);

  for (const auto& mono : monomials_up_to(order, log_length)) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(code.block_length), 1);
    for (int col = 0; col < code.block_length; ++col) {
      for (int var : mono) {
        row[static_cast<std::size_t>(col)] &=
            static_cast<std::uint8_t>(variable_at(var, col, log_length));
      }
    }
    code.generator.emplace_back(std::move(row), BlockRole::kCodeword);
  }
  code.message_length = static_cast<int>(code.generator.size());
  return code;
}

const RmCode& rm13() {
  static const RmCode code = build_rm_code(1, 3);
  return code;
}

BitBlock encode(const RmCode& code, const BitBlock& message) {
  if (message.size() != static_cast<std::size_t>(code.message_length)) {
    throw std::invalid_argument("encode: message length does not match k");
  }
  BitBlock word = BitBlock::zeros(static_cast<std::size_t>(code.block_length),
                                  BlockRole::kCodeword);
  for (std::size_t i = 0; i < message.size(); ++i) {
    if (message.bits()[i]) word = word ^ code.generator[i];
  }
  return word;
}

BitBlock encode_xor_oracle(const BitBlock& message) {
  if (message.size() != 4) {
    throw std::invalid_argument("encode_xor_oracle: message must be 4 bits");
  }
  const int m1 = message.bit(1), m2 = message.bit(2), m3 = message.bit(3),
            m4 = message.bit(4);
  std::vector<std::uint8_t> c(8);
  c[0] = static_cast<std::uint8_t>(m1 ^ m2 ^ m3 ^ m4);
  c[1] = static_cast<std::uint8_t>(m1 ^ m2 ^ m3);
  c[2] = static_cast<std::uint8_t>(m1 ^ m2 ^ m4);
  c[3] = static_cast<std::uint8_t>(m1 ^ m2);
  c[4] = static_cast<std::uint8_t>(m1 ^ m3 ^ m4);
  c[5] = static_cast<std::uint8_t>(m1 ^ m3);
  c[6] = static_cast<std::uint8_t>(m1 ^ m4);
  c[7] = static_cast<std::uint8_t>(m1);
  return BitBlock(std::move(c), BlockRole::kCodeword);
}

DecodeOutcome decode(const RmCode& code, const BitBlock& received,
                     DecodeMode mode) {
  if (received.size() != static_cast<std::size_t>(code.block_length)) {
    throw std::invalid_argument("decode: received length does not match n");
  }
  if (code.order > 1) {
    throw std::invalid_argument(
        "decode: only first-order (r <= 1) majority-logic decoding is supported");
  }

  const int n = code.block_length;
  const int m = code.log_length;
  const auto& r = received.bits();

  bool tie = false;
  std::vector<int> coeffs;  // first-order coefficients m2..m(k)
  if (code.order == 1) {
    for (int i = 1; i <= m; ++i) {
      const int mask = 1 << (m - i);
      int ones = 0;
      for (int j = 0; j < n; ++j) {
        if (j & mask) continue;
        ones += r[static_cast<std::size_t>(j)] ^
                r[static_cast<std::size_t>(j ^ mask)];
      }
      const int votes = n / 2;
      if (2 * ones == votes) {
        tie = true;
        coeffs.push_back(0);
      } else {
        coeffs.push_back(2 * ones > votes ? 1 : 0);
      }
    }
  }

  // Constant term from the residual after stripping the first-order part.
  BitBlock residual = received;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i]) residual = residual ^ code.generator[i + 1];
  }
  const int w = residual.weight();
  int constant = 0;
  if (2 * w == n) {
    tie = true;
  } else {
    constant = 2 * w > n ? 1 : 0;
  }

  DecodeOutcome out;
  if (tie) {
    out.status = DecodeStatus::kDetectedUncorrectable;
    return out;
  }

  std::vector<std::uint8_t> message_bits;
  message_bits.push_back(static_cast<std::uint8_t>(constant));
  for (int c : coeffs) message_bits.push_back(static_cast<std::uint8_t>(c));
  BitBlock message(std::move(message_bits), BlockRole::kMessage);

  const BitBlock reencoded = encode(code, message);
  std::vector<int> diffs;
  for (int j = 1; j <= n; ++j) {
    if (reencoded.bit(static_cast<std::size_t>(j)) !=
        received.bit(static_cast<std::size_t>(j))) {
      diffs.push_back(j);
    }
  }

  if (mode == DecodeMode::kDetectOnly) {
    if (diffs.empty()) {
      out.status = DecodeStatus::kClean;
      out.decoded = std::move(message);
    } else {
      out.status = DecodeStatus::kDetectedUncorrectable;
    }
    return out;
  }

  if (diffs.empty()) {
    out.status = DecodeStatus::kClean;
    out.decoded = std::move(message);
  } else if (diffs.size() == 1) {
    out.status = DecodeStatus::kCorrected;
    out.decoded = std::move(message);
    out.corrected_positions = std::move(diffs);
  } else {
    out.status = DecodeStatus::kDetectedUncorrectable;
  }
  return out;
}

std::map<int, ErrorPatternCounts> error_pattern_census(const RmCode& code,
                                                       int max_weight) {
  const int n = code.block_length;
  const int k = code.message_length;
  if (n > 16) {
    throw std::invalid_argument("error_pattern_census: n > 16 is not enumerable");
  }
  if (max_weight < 0 || max_weight > n) {
    throw std::invalid_argument("error_pattern_census: max_weight out of range");
  }

  std::map<int, ErrorPatternCounts> table;
  for (int w = 0; w <= max_weight; ++w) table[w];

  for (int msg_value = 0; msg_value < (1 << k); ++msg_value) {
    std::vector<std::uint8_t> mbits(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) mbits[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((msg_value >> (k - 1 - i)) & 1);
    const BitBlock message(mbits, BlockRole::kMessage);
    const BitBlock codeword = encode(code, message);

    for (int pattern = 0; pattern < (1 << n); ++pattern) {
      const int w = __builtin_popcount(static_cast<unsigned>(pattern));
      if (w > max_weight) continue;
      BitBlock corrupted = codeword;
      for (int j = 0; j < n; ++j) {
        if (pattern & (1 << j)) {
          corrupted.set_bit(static_cast<std::size_t>(j + 1),
                            corrupted.bit(static_cast<std::size_t>(j + 1)) ^ 1);
        }
      }
      const DecodeOutcome outcome = decode(code, corrupted, DecodeMode::kCorrect);
      auto& row = table[w];
      if (outcome.decoded && *outcome.decoded == message) {
        ++row.corrected_ok;
      } else if (outcome.status == DecodeStatus::kDetectedUncorrectable) {
        ++row.detected;
      } else {
        ++row.miscorrected;
      }
    }
  }
  return table;
}

}  // namespace sfqrm
