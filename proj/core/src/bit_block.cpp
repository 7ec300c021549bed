#include "sfqrm/bit_block.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sfqrm {

BitBlock::BitBlock(std::vector<std::uint8_t> bits, BlockRole role)
    : bits_(std::move(bits)), role_(role) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("BitBlock: bits must be 0 or 1");
  }
}

BitBlock BitBlock::zeros(std::size_t length, BlockRole role) {
  return BitBlock(std::vector<std::uint8_t>(length, 0), role);
}

BitBlock BitBlock::from_string(std::string_view text, BlockRole role) {
  if (text.empty()) throw std::invalid_argument("BitBlock: empty bit string");
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitBlock: invalid character '" +
                                  std::string(1, c) + "' in bit string");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitBlock(std::move(bits), role);
}

int BitBlock::bit(std::size_t pos) const {
  if (pos < 1 || pos > bits_.size()) {
    throw std::out_of_range("BitBlock: bit position out of range");
  }
  return bits_[pos - 1];
}

void BitBlock::set_bit(std::size_t pos, int value) {
  if (pos < 1 || pos > bits_.size()) {
    throw std::out_of_range("BitBlock: bit position out of range");
  }
  if (value != 0 && value != 1) {
    throw std::invalid_argument("BitBlock: bit value must be 0 or 1");
  }
  bits_[pos - 1] = static_cast<std::uint8_t>(value);
}

int BitBlock::weight() const {
  return std::accumulate(bits_.begin(), bits_.end(), 0);
}

std::string BitBlock::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BitBlock BitBlock::operator^(const BitBlock& other) const {
  if (bits_.size() != other.bits_.size() || role_ != other.role_) {
    throw std::invalid_argument("BitBlock: XOR operands must match in length and role");
  }
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ^ other.bits_[i];
  return BitBlock(std::move(out), role_);
}

int hamming_distance(const BitBlock& a, const BitBlock& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.bits()[i] != b.bits()[i];
  return d;
}

}  // namespace sfqrm
