#include "tdes/bit_vector.hpp"

#include "tdes/error.hpp"

namespace tdes {

BitVector::BitVector(std::size_t width) : width_(width) {
  if (width > kCapacity) {
    throw UsageFault("BitVector width " + std::to_string(width) +
                     " exceeds capacity");
  }
}

BitVector BitVector::from_u64(std::uint64_t value, std::size_t width) {
  BitVector v(width);
  for (std::size_t i = 0; i < width; ++i) {
    v.cells_[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1U);
  }
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(0);
  for (char c : bits) {
    if (c == ' ') continue;
    if (c != '0' && c != '1') {
      throw UsageFault("bit string may only contain '0' and '1'");
    }
    if (v.width_ == kCapacity) throw UsageFault("bit string too long");
    v.cells_[v.width_++] = static_cast<std::uint8_t>(c - '0');
  }
  return v;
}

BitVector BitVector::from_cells(std::span<const std::uint8_t> cells) {
  BitVector v(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] > 1) throw UsageFault("bit cell holds a value other than 0/1");
    v.cells_[i] = cells[i];
  }
  return v;
}

int BitVector::bit(std::size_t pos) const {
  if (pos < 1 || pos > width_) {
    throw UsageFault("bit position " + std::to_string(pos) +
                     " outside 1.." + std::to_string(width_));
  }
  return cells_[pos - 1];
}

void BitVector::set_bit(std::size_t pos, int value) {
  if (pos < 1 || pos > width_) {
    throw UsageFault("bit position " + std::to_string(pos) +
                     " outside 1.." + std::to_string(width_));
  }
  cells_[pos - 1] = static_cast<std::uint8_t>(value & 1);
}

BitVector BitVector::slice(std::size_t first, std::size_t count) const {
  if (first < 1 || first - 1 + count > width_) {
    throw UsageFault("slice out of range");
  }
  BitVector v(count);
  for (std::size_t i = 0; i < count; ++i) v.cells_[i] = cells_[first - 1 + i];
  return v;
}

BitVector BitVector::concat(const BitVector& tail) const {
  BitVector v(width_ + tail.width_);
  for (std::size_t i = 0; i < width_; ++i) v.cells_[i] = cells_[i];
  for (std::size_t i = 0; i < tail.width_; ++i) {
    v.cells_[width_ + i] = tail.cells_[i];
  }
  return v;
}

std::uint64_t BitVector::to_u64() const {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width_; ++i) value = (value << 1) | cells_[i];
  return value;
}

std::string BitVector::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) s[i] = cells_[i] ? '1' : '0';
  return s;
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < width_; ++i) n += cells_[i];
  return n;
}

BitVector& BitVector::operator^=(const BitVector& rhs) {
  if (width_ != rhs.width_) {
    throw UsageFault("XOR of BitVectors with different widths");
  }
  for (std::size_t i = 0; i < width_; ++i) cells_[i] ^= rhs.cells_[i];
  return *this;
}

}  // namespace tdes
