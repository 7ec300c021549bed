#ifndef SFQRM_BIT_BLOCK_H
#define SFQRM_BIT_BLOCK_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sfqrm {

enum class BlockRole { kMessage, kCodeword };

// Fixed-length block of bits, either a k-bit message or an n-bit codeword.
// Bit positions are 1-based to match the conventional m1..mk / c1..cn
// channel labels; bit 1 is the leftmost character of the string form.
class BitBlock {
 public:
  BitBlock() = default;
  BitBlock(std::vector<std::uint8_t> bits, BlockRole role);

  static BitBlock zeros(std::size_t length, BlockRole role);
  // Parses a string of '0'/'1' characters; throws std::invalid_argument
  // on any other character or an empty string.
  static BitBlock from_string(std::string_view text, BlockRole role);

  std::size_t size() const { return bits_.size(); }
  BlockRole role() const { return role_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  int bit(std::size_t pos) const;          // 1-based
  void set_bit(std::size_t pos, int value);  // 1-based

  int weight() const;
  std::string to_string() const;

  BitBlock operator^(const BitBlock& other) const;
  bool operator==(const BitBlock& other) const = default;

 private:
  std::vector<std::uint8_t> bits_;
  BlockRole role_ = BlockRole::kMessage;
};

int hamming_distance(const BitBlock& a, const BitBlock& b);

}  // namespace sfqrm

#endif  // SFQRM_BIT_BLOCK_H
