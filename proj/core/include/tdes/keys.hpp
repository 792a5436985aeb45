#pragma once

#include <string>
#include <string_view>

#include "tdes/bit_vector.hpp"

namespace tdes {

// Exactly 16 hex digits, either case, read big-endian: bit 1 is the MSB of
// the first digit pair. Throws KeyFormatFault otherwise.
BitVector parse_key(std::string_view hex);

// Upper-case hex of a bit vector whose width is a multiple of 4.
std::string to_hex(const BitVector& bits);

}  // namespace tdes
