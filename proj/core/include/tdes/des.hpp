#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "tdes/bit_vector.hpp"
#include "tdes/tables.hpp"

namespace tdes {

enum class Direction { Encrypt, Decrypt };

using Block = std::array<std::uint8_t, 8>;

// Three 64-bit base keys. Parity bits are carried but ignored.
struct KeyTriple {
  BitVector k1{64};
  BitVector k2{64};
  BitVector k3{64};

  const BitVector& operator[](std::size_t i) const;
};

// Round keys in generation order: subkeys[0] is round 1.
struct SubkeySchedule {
  std::array<BitVector, 16> subkeys;

  friend bool operator==(const SubkeySchedule&, const SubkeySchedule&) = default;
};

struct TripleSchedule {
  std::array<SubkeySchedule, 3> schedules;

  friend bool operator==(const TripleSchedule&, const TripleSchedule&) = default;
};

// The 28-bit halves after each cumulative rotation; index 0 is the state
// straight out of pc_1, index 16 the state after the last round.
struct KeyHalves {
  std::array<BitVector, 17> c;
  std::array<BitVector, 17> d;
};

// Bit 1 is the MSB of block[0]; bit 64 is the LSB of block[7].
BitVector bytes_to_bits(std::span<const std::uint8_t> block);
Block bits_to_bytes(const BitVector& bits);

// output[i] = v[t.entries[i]] for i in 1..t.out_width.
BitVector permute(const BitVector& v, const PermutationTable& t);

BitVector rotate_left28(const BitVector& half, int amount);

KeyHalves key_halves(const BitVector& key);
SubkeySchedule key_schedule(const BitVector& key);
TripleSchedule triple_schedule(const KeyTriple& keys);

// Subkeys in the order the 16 rounds consume them for `dir`.
std::array<BitVector, 16> round_keys(const SubkeySchedule& ks, Direction dir);

// 48 -> 32 bits. For each 6-bit group b1..b6: row = 2*b1 + b6 and
// col = b2b3b4b5 read as a binary number.
BitVector sbox_substitute(const BitVector& v);

BitVector feistel_f(const BitVector& right, const BitVector& subkey);

BitVector des_block(const BitVector& block, const SubkeySchedule& ks, Direction dir);

// E(K3, D(K2, E(K1, p))).
BitVector tdes_encrypt_block(const BitVector& block, const TripleSchedule& ts);
// D(K1, E(K2, D(K3, c))).
BitVector tdes_decrypt_block(const BitVector& block, const TripleSchedule& ts);

BitVector tdes_block(const BitVector& block, const TripleSchedule& ts, Direction dir);

}  // namespace tdes
