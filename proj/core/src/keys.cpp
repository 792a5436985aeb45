#include "tdes/keys.hpp"

#include <cctype>

#include "tdes/error.hpp"

namespace tdes {

BitVector parse_key(std::string_view hex) {
  if (hex.size() != 16) {
    throw KeyFormatFault("key must be 16 hex digits, got " + std::to_string(hex.size()));
  }
  BitVector key(64);
  for (std::size_t i = 0; i < 16; ++i) {
    const auto c = static_cast<unsigned char>(hex[i]);
    if (!std::isxdigit(c)) {
      throw KeyFormatFault("key contains non-hex character '" + std::string(1, hex[i]) + "'");
    }
    int nibble = std::isdigit(c) ? c - '0' : std::tolower(c) - 'a' + 10;
    for (std::size_t j = 0; j < 4; ++j) key.set_bit(4 * i + j + 1, (nibble >> (3 - j)) & 1);
  }
  return key;
}

std::string to_hex(const BitVector& bits) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  if (bits.width() % 4 != 0) throw UsageFault("hex output needs a width divisible by 4");
  std::string out;
  auto cells = bits.cells();
  for (std::size_t i = 0; i < cells.size(); i += 4) {
    out += kDigits[8 * cells[i] + 4 * cells[i + 1] + 2 * cells[i + 2] + cells[i + 3]];
  }
  return out;
}

}  // namespace tdes
