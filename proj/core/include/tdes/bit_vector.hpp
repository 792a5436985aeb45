#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace tdes {

/// Fixed-capacity sequence of bit cells, one byte per bit.
///
/// Positions are 1-based through bit()/set_bit() so that DES table entries
/// can be used directly as indices. Bit 1 is the most significant bit when
/// the vector is converted to or from an integer or octets.
class BitVector {
 public:
  static constexpr std::size_t kCapacity = 64;

  BitVector() = default;
  explicit BitVector(std::size_t width);

  static BitVector from_u64(std::uint64_t value, std::size_t width = 64);
  // Accepts a string of '0'/'1'; spaces are ignored.
  static BitVector from_string(std::string_view bits);
  static BitVector from_cells(std::span<const std::uint8_t> cells);

  std::size_t width() const noexcept { return width_; }

  int bit(std::size_t pos) const;
  void set_bit(std::size_t pos, int value);

  std::span<const std::uint8_t> cells() const noexcept {
    return {cells_.data(), width_};
  }

  // Bits first..first+count-1 (1-based).
  BitVector slice(std::size_t first, std::size_t count) const;
  BitVector concat(const BitVector& tail) const;

  std::uint64_t to_u64() const;
  std::string to_string() const;
  std::size_t popcount() const noexcept;

  BitVector& operator^=(const BitVector& rhs);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    if (a.width_ != b.width_) return false;
    for (std::size_t i = 0; i < a.width_; ++i) {
      if (a.cells_[i] != b.cells_[i]) return false;
    }
    return true;
  }

 private:
  std::array<std::uint8_t, kCapacity> cells_{};
  std::size_t width_ = 0;
};

}  // namespace tdes
