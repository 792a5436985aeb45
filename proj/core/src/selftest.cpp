#include "tdes/selftest.hpp"

#include <random>

#include "tdes/des.hpp"
#include "tdes/ecb.hpp"
#include "tdes/kernel_sim.hpp"
#include "tdes/keys.hpp"
#include "tdes/tables.hpp"

namespace tdes {
namespace {

struct Vector {
  const char* k1;
  const char* k2;
  const char* k3;
  const char* plain;
  const char* cipher;
};

// Published single-DES vectors (keyed as K,K,K) and the SP 800-67 bundle.
constexpr Vector kKnownAnswers[] = {
    {"133457799BBCDFF1", "133457799BBCDFF1", "133457799BBCDFF1", "0123456789ABCDEF",
     "85E813540F0AB405"},
    {"0101010101010101", "0101010101010101", "0101010101010101", "8000000000000000",
     "95F8A5E5DD31D900"},
    {"7CA110454A1A6E57", "7CA110454A1A6E57", "7CA110454A1A6E57", "01A1D6D039776742",
     "690F5B0D9A26939B"},
    {"0123456789ABCDEF", "23456789ABCDEF01", "456789ABCDEF0123", "5468652071756663",
     "A826FD8CE53B855F"},
};

BitVector random_bits(std::mt19937_64& rng) { return BitVector::from_u64(rng()); }

KeyTriple random_keys(std::mt19937_64& rng) {
  return {random_bits(rng), random_bits(rng), random_bits(rng)};
}

}  // namespace

std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> results;

  for (const auto& check : validate_tables(load_tables()).checks) {
    results.push_back({"tables: " + check.name, check.passed, check.detail});
  }

  for (const auto& v : kKnownAnswers) {
    KeyTriple keys{parse_key(v.k1), parse_key(v.k2), parse_key(v.k3)};
    auto ts = triple_schedule(keys);
    auto p = parse_key(v.plain);
    auto c = tdes_encrypt_block(p, ts);
    bool ok = to_hex(c) == v.cipher && tdes_decrypt_block(c, ts) == p;
    results.push_back({std::string("known answer ") + v.k1 + "/" + v.plain, ok,
                       ok ? "" : "got " + to_hex(c) + ", expected " + v.cipher});
  }

  std::mt19937_64 rng(0x5E1F7E57);
  {
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      auto ts = triple_schedule(random_keys(rng));
      auto p = random_bits(rng);
      ok = tdes_decrypt_block(tdes_encrypt_block(p, ts), ts) == p;
    }
    results.push_back({"des_core roundtrip", ok, ok ? "" : "decrypt(encrypt(p)) != p"});
  }

  {
    bool equal = true;
    bool race_free = true;
    for (int i = 0; i < 8 && equal && race_free; ++i) {
      auto keys = random_keys(rng);
      auto kg = sim::sim_keygen(keys);
      equal = kg.schedule == triple_schedule(keys);
      race_free = sim::check_race_freedom(kg.trace).empty();

      std::vector<BitVector> blocks;
      for (int b = 0; b < 3; ++b) blocks.push_back(random_bits(rng));
      auto enc = sim::sim_tdes(blocks, kg.schedule, Direction::Encrypt);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        equal = equal && enc.blocks[b] == tdes_encrypt_block(blocks[b], kg.schedule);
      }
      race_free = race_free && sim::check_race_freedom(enc.trace).empty();
    }
    results.push_back({"kernel_sim matches des_core", equal, equal ? "" : "output mismatch"});
    results.push_back({"kernel_sim traces race-free", race_free,
                       race_free ? "" : "two lanes wrote one cell in a phase"});
  }

  {
    std::vector<std::uint8_t> data(8 * 100);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    Payload payload(data);
    auto ts = triple_schedule(random_keys(rng));
    EngineConfig cfg;
    cfg.engine = EngineKind::Reference;
    auto expected = ecb_process(payload, ts, Direction::Encrypt, cfg);
    bool ok = true;
    cfg.engine = EngineKind::Parallel;
    for (unsigned w : {1U, 2U, 4U, 8U}) {
      for (std::size_t chunk : {std::size_t{1}, std::size_t{16}, std::size_t{1024}}) {
        cfg.workers = w;
        cfg.chunk_blocks = chunk;
        ok = ok && ecb_process(payload, ts, Direction::Encrypt, cfg) == expected;
      }
    }
    results.push_back({"parallel_engine worker invariance", ok,
                       ok ? "" : "output differs across worker/chunk settings"});
  }

  return results;
}

}  // namespace tdes
