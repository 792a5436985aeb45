#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "tdes/bit_vector.hpp"
#include "tdes/des.hpp"

namespace tdes::sim {

// Width of a key-generation kernel block (one lane per pc_1 output bit).
inline constexpr std::uint32_t kKeygenBlockWidth = 56;
// Width of an encryption/decryption kernel block (one lane per text bit).
inline constexpr std::uint32_t kCryptBlockWidth = 64;

enum class MemorySpace : std::uint8_t {
  ReadOnlyTables,
  ConstantShift,
  SharedBlock,
  GlobalIn,
  GlobalOut,
  GlobalKeys,
};
inline constexpr std::size_t kMemorySpaceCount = 6;
inline constexpr std::array<MemorySpace, kMemorySpaceCount> kAllMemorySpaces = {
    MemorySpace::ReadOnlyTables, MemorySpace::ConstantShift, MemorySpace::SharedBlock,
    MemorySpace::GlobalIn,       MemorySpace::GlobalOut,     MemorySpace::GlobalKeys};

std::string_view to_string(MemorySpace space) noexcept;

enum class AccessOp : std::uint8_t { Read, Write };

struct ThreadId {
  std::uint32_t block_index = 0;
  std::uint32_t lane = 0;

  friend bool operator==(const ThreadId&, const ThreadId&) = default;
};

struct Access {
  ThreadId thread;
  MemorySpace space = MemorySpace::SharedBlock;
  std::uint32_t cell = 0;
  AccessOp op = AccessOp::Read;

  friend bool operator==(const Access&, const Access&) = default;
};

struct SpaceCounts {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;

  friend bool operator==(const SpaceCounts&, const SpaceCounts&) = default;
};

struct MemoryStats {
  std::array<SpaceCounts, kMemorySpaceCount> by_space{};

  SpaceCounts& operator[](MemorySpace s) { return by_space[static_cast<std::size_t>(s)]; }
  const SpaceCounts& operator[](MemorySpace s) const {
    return by_space[static_cast<std::size_t>(s)];
  }
  MemoryStats& operator+=(const MemoryStats& rhs);

  friend bool operator==(const MemoryStats&, const MemoryStats&) = default;
};

// One barrier-delimited step of one kernel block. `round` is 1..16 inside
// the round loop and 0 outside it.
struct PhaseRecord {
  std::string_view phase_name;
  int round = 0;
  std::uint32_t launch = 0;
  std::uint32_t block_index = 0;
  // Lanes 0..active_lanes-1 took part in the phase.
  std::uint32_t active_lanes = 0;
  MemoryStats counts;
  // Empty when access recording is suppressed.
  std::vector<Access> accesses;

  friend bool operator==(const PhaseRecord&, const PhaseRecord&) = default;
};

struct Grid {
  std::uint32_t blocks = 0;
  std::uint32_t block_width = 0;

  friend bool operator==(const Grid&, const Grid&) = default;
};

struct KernelTrace {
  std::vector<Grid> launches;
  std::vector<PhaseRecord> phases;
  // Totals over every access performed, whether or not phases were kept.
  MemoryStats stats;

  friend bool operator==(const KernelTrace&, const KernelTrace&) = default;
};

struct SimOptions {
  // Keep per-access lists (needed by the race and initialization checks).
  bool record_accesses = true;
  // Keep per-phase records at all; when false only launches and stats remain.
  bool record_phases = true;
};

// Cell layout of the ReadOnlyTables space: every constant table laid end to
// end, S-boxes flattened as box*64 + row*16 + col.
struct TableRegion {
  std::string_view name;
  std::uint32_t offset;
  std::uint32_t size;
};
std::span<const TableRegion> read_only_layout() noexcept;
// Region containing `cell`, or nullptr when out of range.
const TableRegion* table_region_of(std::uint32_t cell) noexcept;

struct KeygenResult {
  TripleSchedule schedule;
  KernelTrace trace;
};

struct PassResult {
  std::vector<BitVector> blocks;
  KernelTrace trace;
};

// Three kernel blocks of 56 lanes, one block per base key.
KeygenResult sim_keygen(const KeyTriple& keys, const SimOptions& options = {});

// One launch of the crypt kernel: one block of 64 lanes per input block.
// For Decrypt the host reverses the round-key order before the launch.
PassResult sim_des_pass(std::span<const BitVector> blocks, const SubkeySchedule& ks,
                        Direction dir, const SimOptions& options = {});

// Three consecutive crypt launches composing EDE (or DED for Decrypt).
PassResult sim_tdes(std::span<const BitVector> blocks, const TripleSchedule& ts,
                    Direction dir, const SimOptions& options = {});

struct RaceViolation {
  std::size_t phase_index = 0;
  std::string_view phase_name;
  std::uint32_t launch = 0;
  std::uint32_t block_index = 0;
  MemorySpace space = MemorySpace::SharedBlock;
  std::uint32_t cell = 0;
  std::vector<std::uint32_t> writer_lanes;
};
using RaceReport = std::vector<RaceViolation>;

// Every (phase, cell) written by two or more distinct lanes. Empty means
// race-free. Needs a trace with recorded accesses.
RaceReport check_race_freedom(const KernelTrace& trace);

// Fold of the per-phase counts. Falls back to trace.stats when phase
// records were not kept.
MemoryStats memory_stats(const KernelTrace& trace);

// SharedBlock reads of cells not written by an earlier phase of the same
// block within the same launch.
std::vector<Access> uninitialized_shared_reads(const KernelTrace& trace);

// Number of reads that hit the S-box region of ReadOnlyTables in a phase.
std::uint64_t sbox_table_reads(const PhaseRecord& phase);

// One line per access: phase,round,block,lane,space,cell,op
void write_trace(std::ostream& out, const KernelTrace& trace);

}  // namespace tdes::sim
