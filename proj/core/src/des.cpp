#include "tdes/des.hpp"

#include <string>

#include "tdes/error.hpp"

namespace tdes {
namespace {

void require_width(const BitVector& v, std::size_t width, const char* what) {
  if (v.width() != width) {
    throw UsageFault(std::string(what) + " expects a " + std::to_string(width) +
                     "-bit input, got " + std::to_string(v.width()));
  }
}

}  // namespace

const BitVector& KeyTriple::operator[](std::size_t i) const {
  switch (i) {
    case 0: return k1;
    case 1: return k2;
    case 2: return k3;
  }
  throw UsageFault("key index " + std::to_string(i) + " outside 0..2");
}

BitVector bytes_to_bits(std::span<const std::uint8_t> block) {
  if (block.size() != 8) {
    throw UsageFault("bytes_to_bits expects 8 octets, got " +
                     std::to_string(block.size()));
  }
  BitVector v(64);
  for (std::size_t i = 0; i < 64; ++i) {
    v.set_bit(i + 1, (block[i / 8] >> (7 - i % 8)) & 1);
  }
  return v;
}

Block bits_to_bytes(const BitVector& bits) {
  require_width(bits, 64, "bits_to_bytes");
  Block out{};
  auto cells = bits.cells();
  for (std::size_t i = 0; i < 64; ++i) {
    out[i / 8] = static_cast<std::uint8_t>(out[i / 8] | (cells[i] << (7 - i % 8)));
  }
  return out;
}

BitVector permute(const BitVector& v, const PermutationTable& t) {
  if (v.width() != static_cast<std::size_t>(t.in_width)) {
    throw UsageFault("permute with " + t.name + " expects " +
                     std::to_string(t.in_width) + " bits, got " +
                     std::to_string(v.width()));
  }
  // The single place where 1-based table entries become 0-based cells.
  auto in = v.cells();
  BitVector out(t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    out.set_bit(i + 1, in[static_cast<std::size_t>(t.entries[i] - 1)]);
  }
  return out;
}

BitVector rotate_left28(const BitVector& half, int amount) {
  require_width(half, 28, "rotate_left28");
  if (amount != 1 && amount != 2) {
    throw UsageFault("rotate_left28 amount must be 1 or 2");
  }
  BitVector out(28);
  for (std::size_t i = 1; i <= 28; ++i) {
    out.set_bit(i, half.bit((i - 1 + static_cast<std::size_t>(amount)) % 28 + 1));
  }
  return out;
}

KeyHalves key_halves(const BitVector& key) {
  require_width(key, 64, "key_schedule");
  const auto& t = load_tables();
  BitVector permuted = permute(key, t.pc_1);
  KeyHalves h;
  h.c[0] = permuted.slice(1, 28);
  h.d[0] = permuted.slice(29, 28);
  for (std::size_t r = 1; r <= 16; ++r) {
    int amount = t.shift_schedule.amounts[r - 1];
    h.c[r] = rotate_left28(h.c[r - 1], amount);
    h.d[r] = rotate_left28(h.d[r - 1], amount);
  }
  return h;
}

SubkeySchedule key_schedule(const BitVector& key) {
  const auto& t = load_tables();
  KeyHalves h = key_halves(key);
  SubkeySchedule ks;
  for (std::size_t r = 1; r <= 16; ++r) {
    ks.subkeys[r - 1] = permute(h.c[r].concat(h.d[r]), t.pc_2);
  }
  return ks;
}

TripleSchedule triple_schedule(const KeyTriple& keys) {
  return {{key_schedule(keys.k1), key_schedule(keys.k2), key_schedule(keys.k3)}};
}

std::array<BitVector, 16> round_keys(const SubkeySchedule& ks, Direction dir) {
  std::array<BitVector, 16> order;
  for (std::size_t r = 0; r < 16; ++r) {
    order[r] = dir == Direction::Encrypt ? ks.subkeys[r] : ks.subkeys[15 - r];
  }
  return order;
}

BitVector sbox_substitute(const BitVector& v) {
  require_width(v, 48, "sbox_substitute");
  const auto& boxes = load_tables().sboxes.boxes;
  auto in = v.cells();
  BitVector out(32);
  for (std::size_t g = 0; g < 8; ++g) {
    const std::uint8_t* b = in.data() + 6 * g;
    int row = 2 * b[0] + b[5];
    int col = 8 * b[1] + 4 * b[2] + 2 * b[3] + b[4];
    int value = boxes[g][static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (std::size_t j = 0; j < 4; ++j) {
      out.set_bit(4 * g + j + 1, (value >> (3 - j)) & 1);
    }
  }
  return out;
}

BitVector feistel_f(const BitVector& right, const BitVector& subkey) {
  require_width(right, 32, "feistel_f");
  require_width(subkey, 48, "feistel_f");
  const auto& t = load_tables();
  return permute(sbox_substitute(permute(right, t.exp_d) ^ subkey), t.per);
}

BitVector des_block(const BitVector& block, const SubkeySchedule& ks, Direction dir) {
  require_width(block, 64, "des_block");
  const auto& t = load_tables();
  BitVector ip = permute(block, t.initial_perm);
  BitVector left = ip.slice(1, 32);
  BitVector right = ip.slice(33, 32);
  for (const BitVector& k : round_keys(ks, dir)) {
    BitVector next = left ^ feistel_f(right, k);
    left = right;
    right = next;
  }
  return permute(right.concat(left), t.final_perm);
}

BitVector tdes_encrypt_block(const BitVector& block, const TripleSchedule& ts) {
  const auto& s = ts.schedules;
  return des_block(des_block(des_block(block, s[0], Direction::Encrypt), s[1],
                             Direction::Decrypt),
                   s[2], Direction::Encrypt);
}

BitVector tdes_decrypt_block(const BitVector& block, const TripleSchedule& ts) {
  const auto& s = ts.schedules;
  return des_block(des_block(des_block(block, s[2], Direction::Decrypt), s[1],
                             Direction::Encrypt),
                   s[0], Direction::Decrypt);
}

BitVector tdes_block(const BitVector& block, const TripleSchedule& ts, Direction dir) {
  return dir == Direction::Encrypt ? tdes_encrypt_block(block, ts)
                                   : tdes_decrypt_block(block, ts);
}

}  // namespace tdes
