#include "tdes/ecb.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

#include "tdes/error.hpp"
#include "tdes/kernel_sim.hpp"

namespace tdes {
namespace {

using ChunkFn = void (*)(std::span<const std::uint8_t>, std::span<std::uint8_t>,
                         const TripleSchedule&, Direction);

void reference_chunk(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                     const TripleSchedule& ts, Direction dir) {
  for (std::size_t off = 0; off < in.size(); off += 8) {
    Block b = bits_to_bytes(tdes_block(bytes_to_bits(in.subspan(off, 8)), ts, dir));
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(off));
  }
}

void simulated_chunk(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                     const TripleSchedule& ts, Direction dir) {
  std::vector<BitVector> blocks;
  blocks.reserve(in.size() / 8);
  for (std::size_t off = 0; off < in.size(); off += 8) {
    blocks.push_back(bytes_to_bits(in.subspan(off, 8)));
  }
  sim::SimOptions quiet{.record_accesses = false, .record_phases = false};
  auto result = sim::sim_tdes(blocks, ts, dir, quiet);
  for (std::size_t i = 0; i < result.blocks.size(); ++i) {
    Block b = bits_to_bytes(result.blocks[i]);
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(8 * i));
  }
}

}  // namespace

std::string_view to_string(EngineKind kind) noexcept {
  switch (kind) {
    case EngineKind::Reference: return "reference";
    case EngineKind::Simulated: return "simulated";
    case EngineKind::Parallel: return "parallel";
  }
  return "unknown";
}

std::string_view to_string(PaddingPolicy policy) noexcept {
  return policy == PaddingPolicy::Strict ? "strict" : "pkcs7";
}

EngineKind parse_engine(std::string_view name) {
  for (auto k : {EngineKind::Reference, EngineKind::Simulated, EngineKind::Parallel}) {
    if (name == to_string(k)) return k;
  }
  throw UsageFault("unknown engine '" + std::string(name) + "'");
}

PaddingPolicy parse_padding(std::string_view name) {
  if (name == "strict") return PaddingPolicy::Strict;
  if (name == "pkcs7") return PaddingPolicy::Pkcs7;
  throw UsageFault("unknown padding policy '" + std::string(name) + "'");
}

unsigned default_workers() noexcept {
  return std::max(1U, std::thread::hardware_concurrency());
}

void EngineConfig::validate() const {
  if (workers < 1) throw UsageFault("workers must be at least 1");
  if (chunk_blocks < 1) throw UsageFault("chunk_blocks must be at least 1");
}

Payload::Payload(std::vector<std::uint8_t> data) : data_(std::move(data)) {
  if (data_.size() % 8 != 0) {
    throw StrictAlignmentFault("payload of " + std::to_string(data_.size()) +
                               " octets is not a multiple of 8");
  }
}

Payload pad(std::span<const std::uint8_t> data, PaddingPolicy policy) {
  std::vector<std::uint8_t> out(data.begin(), data.end());
  if (policy == PaddingPolicy::Pkcs7) {
    auto k = static_cast<std::uint8_t>(8 - data.size() % 8);
    out.insert(out.end(), k, k);
  }
  return Payload(std::move(out));
}

std::vector<std::uint8_t> unpad(std::span<const std::uint8_t> data, PaddingPolicy policy) {
  if (data.size() % 8 != 0) {
    throw StrictAlignmentFault("ciphertext of " + std::to_string(data.size()) +
                               " octets is not a multiple of 8");
  }
  if (policy == PaddingPolicy::Strict) return {data.begin(), data.end()};
  if (data.empty()) throw PaddingFault("empty input has no padding block");
  std::uint8_t k = data.back();
  if (k < 1 || k > 8) {
    throw PaddingFault("final octet " + std::to_string(k) + " is not a valid pad length");
  }
  auto tail = data.last(k);
  if (std::any_of(tail.begin(), tail.end(), [k](std::uint8_t v) { return v != k; })) {
    throw PaddingFault("padding octets do not all equal " + std::to_string(k));
  }
  return {data.begin(), data.end() - k};
}

std::vector<std::uint8_t> ecb_process(const Payload& payload, const TripleSchedule& ts,
                                      Direction dir, const EngineConfig& cfg) {
  cfg.validate();
  auto in = payload.data();
  std::vector<std::uint8_t> out(in.size());
  if (in.empty()) return out;

  if (cfg.engine == EngineKind::Reference) {
    reference_chunk(in, out, ts, dir);
    return out;
  }

  ChunkFn fn = cfg.engine == EngineKind::Simulated ? simulated_chunk : reference_chunk;
  const std::size_t blocks = payload.block_count();
  const std::size_t chunks = (blocks + cfg.chunk_blocks - 1) / cfg.chunk_blocks;
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(cfg.workers, chunks));

  // Worker w owns chunks w, w + workers, w + 2*workers, ...
  auto work = [&](std::size_t w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      std::size_t first = c * cfg.chunk_blocks * 8;
      std::size_t len = std::min(cfg.chunk_blocks * 8, in.size() - first);
      fn(in.subspan(first, len), std::span(out).subspan(first, len), ts, dir);
    }
  };

  if (workers == 1) {
    work(0);
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace tdes
