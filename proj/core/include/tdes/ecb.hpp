#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tdes/des.hpp"

namespace tdes {

enum class EngineKind { Reference, Simulated, Parallel };
enum class PaddingPolicy { Strict, Pkcs7 };

std::string_view to_string(EngineKind kind) noexcept;
std::string_view to_string(PaddingPolicy policy) noexcept;
// Throws UsageFault for unknown names.
EngineKind parse_engine(std::string_view name);
PaddingPolicy parse_padding(std::string_view name);

// Available hardware threads, at least 1.
unsigned default_workers() noexcept;

inline constexpr std::size_t kDefaultChunkBlocks = 1024;

// Reference runs every block in the calling thread. Parallel and Simulated
// deal chunks of `chunk_blocks` blocks round-robin to `workers` threads.
struct EngineConfig {
  unsigned workers = default_workers();
  std::size_t chunk_blocks = kDefaultChunkBlocks;
  EngineKind engine = EngineKind::Parallel;
  PaddingPolicy padding = PaddingPolicy::Pkcs7;

  void validate() const;
};

// Octets whose length is a multiple of the 8-octet block size.
class Payload {
 public:
  Payload() = default;
  // Throws StrictAlignmentFault if data is not block aligned.
  explicit Payload(std::vector<std::uint8_t> data);

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::size_t block_count() const noexcept { return data_.size() / 8; }

 private:
  std::vector<std::uint8_t> data_;
};

// Strict: passes aligned input through. Pkcs7: appends k octets of value k,
// k = 8 - len % 8 (a whole block when already aligned).
Payload pad(std::span<const std::uint8_t> data, PaddingPolicy policy);

// Inverse of pad. Throws PaddingFault on a malformed Pkcs7 tail.
std::vector<std::uint8_t> unpad(std::span<const std::uint8_t> data, PaddingPolicy policy);

// Block i of the result is the 3DES transform of block i of the payload.
// The result depends only on the payload, keys and direction.
std::vector<std::uint8_t> ecb_process(const Payload& payload, const TripleSchedule& ts,
                                      Direction dir, const EngineConfig& cfg);

}  // namespace tdes
