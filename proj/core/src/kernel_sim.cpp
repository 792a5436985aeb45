#include "tdes/kernel_sim.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

#include "tdes/error.hpp"
#include "tdes/phase_machine.hpp"

namespace tdes::sim {
namespace {

using Cells = std::vector<std::uint8_t>;

constexpr std::array<TableRegion, 7> kLayout = {{
    {"pc_1", 0, 56},
    {"pc_2", 56, 48},
    {"initial_perm", 104, 64},
    {"exp_d", 168, 48},
    {"per", 216, 32},
    {"final_perm", 248, 64},
    {"sbox", 312, 512},
}};
constexpr std::uint32_t kReadOnlyCells = 824;

constexpr std::uint32_t region_offset(std::string_view name) {
  for (const auto& r : kLayout) {
    if (r.name == name) return r.offset;
  }
  return kReadOnlyCells;
}

constexpr std::uint32_t kPc1 = region_offset("pc_1");
constexpr std::uint32_t kPc2 = region_offset("pc_2");
constexpr std::uint32_t kIp = region_offset("initial_perm");
constexpr std::uint32_t kExp = region_offset("exp_d");
constexpr std::uint32_t kPer = region_offset("per");
constexpr std::uint32_t kFp = region_offset("final_perm");
constexpr std::uint32_t kSbox = region_offset("sbox");

Cells build_read_only_image() {
  const auto& t = load_tables();
  Cells img(kReadOnlyCells, 0);
  auto put = [&](std::uint32_t offset, const PermutationTable& p) {
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
      img[offset + i] = static_cast<std::uint8_t>(p.entries[i]);
    }
  };
  put(kPc1, t.pc_1);
  put(kPc2, t.pc_2);
  put(kIp, t.initial_perm);
  put(kExp, t.exp_d);
  put(kPer, t.per);
  put(kFp, t.final_perm);
  for (std::size_t g = 0; g < 8; ++g) {
    for (std::size_t row = 0; row < 4; ++row) {
      for (std::size_t col = 0; col < 16; ++col) {
        img[kSbox + g * 64 + row * 16 + col] = t.sboxes.boxes[g][row][col];
      }
    }
  }
  return img;
}

using Launch = PhaseMachine;
using Lane = PhaseMachine::Lane;
constexpr auto kRot = MemorySpace::ReadOnlyTables;
constexpr auto kShift = MemorySpace::ConstantShift;
constexpr auto kShared = MemorySpace::SharedBlock;
constexpr auto kIn = MemorySpace::GlobalIn;
constexpr auto kOut = MemorySpace::GlobalOut;
constexpr auto kKeys = MemorySpace::GlobalKeys;

// Key-generation kernel shared layout: permuted key, then C and D halves
// stored back to back so pc_2 entries index C||D directly.
constexpr std::uint32_t kKgPermuted = 0;
constexpr std::uint32_t kKgC = 56;
constexpr std::uint32_t kKgD = 84;
constexpr std::uint32_t kKgSharedCells = 112;

// Crypt kernel shared layout, one array per intermediate value.
constexpr std::uint32_t kText = 0;      // 64 loaded bits
constexpr std::uint32_t kPermuted = 64; // 64 after initial_perm
constexpr std::uint32_t kLeft = 128;    // 32
constexpr std::uint32_t kRight = 160;   // 32
constexpr std::uint32_t kExpanded = 192;// 48
constexpr std::uint32_t kXored = 240;   // 48
constexpr std::uint32_t kSboxVal = 288; // 8 nibbles, one per group
constexpr std::uint32_t kSubst = 296;   // 32
constexpr std::uint32_t kPermOut = 328; // 32
constexpr std::uint32_t kNewRight = 360;// 32
constexpr std::uint32_t kCombined = 392;// 64
constexpr std::uint32_t kCryptSharedCells = 456;

void run_crypt_launch(Launch& k, std::uint32_t blocks) {
  for (std::uint32_t b = 0; b < blocks; ++b) {
    k.begin_block(b);
    k.phase("load", 0, 64, [&](Lane& l) {
      l.write(kShared, kText + l.id(), l.read(kIn, b * 64 + l.id()));
    });
    k.phase("initial_perm", 0, 64, [&](Lane& l) {
      std::uint32_t src = l.read(kRot, kIp + l.id());
      l.write(kShared, kPermuted + l.id(), l.read(kShared, kText + src - 1));
    });
    k.phase("split", 0, 1, [&](Lane& l) {
      for (std::uint32_t i = 0; i < 32; ++i) {
        l.write(kShared, kLeft + i, l.read(kShared, kPermuted + i));
        l.write(kShared, kRight + i, l.read(kShared, kPermuted + 32 + i));
      }
    });
    for (int r = 1; r <= 16; ++r) {
      const std::uint32_t key_row = static_cast<std::uint32_t>(r - 1) * 48;
      k.phase("expand", r, 48, [&](Lane& l) {
        std::uint32_t src = l.read(kRot, kExp + l.id());
        l.write(kShared, kExpanded + l.id(), l.read(kShared, kRight + src - 1));
      });
      k.phase("key_xor", r, 48, [&](Lane& l) {
        l.write(kShared, kXored + l.id(),
                l.read(kShared, kExpanded + l.id()) ^ l.read(kKeys, key_row + l.id()));
      });
      // Lane 4g of group g fetches the substitution value.
      k.phase("sbox_lookup", r, 32, [&](Lane& l) {
        if (l.id() % 4 != 0) return;
        std::uint32_t g = l.id() / 4;
        std::array<std::uint32_t, 6> bits{};
        for (std::uint32_t i = 0; i < 6; ++i) bits[i] = l.read(kShared, kXored + 6 * g + i);
        std::uint32_t row = 2 * bits[0] + bits[5];
        std::uint32_t col = 8 * bits[1] + 4 * bits[2] + 2 * bits[3] + bits[4];
        l.write(kShared, kSboxVal + g, l.read(kRot, kSbox + g * 64 + row * 16 + col));
      });
      k.phase("sbox_scatter", r, 32, [&](Lane& l) {
        std::uint32_t g = l.id() / 4;
        std::uint32_t j = l.id() % 4;
        l.write(kShared, kSubst + l.id(), (l.read(kShared, kSboxVal + g) >> (3 - j)) & 1);
      });
      k.phase("p_perm", r, 32, [&](Lane& l) {
        std::uint32_t src = l.read(kRot, kPer + l.id());
        l.write(kShared, kPermOut + l.id(), l.read(kShared, kSubst + src - 1));
      });
      k.phase("left_xor", r, 32, [&](Lane& l) {
        l.write(kShared, kNewRight + l.id(),
                l.read(kShared, kLeft + l.id()) ^ l.read(kShared, kPermOut + l.id()));
      });
      k.phase("swap", r, 32, [&](Lane& l) {
        l.write(kShared, kLeft + l.id(), l.read(kShared, kRight + l.id()));
        l.write(kShared, kRight + l.id(), l.read(kShared, kNewRight + l.id()));
      });
    }
    k.phase("combine", 0, 1, [&](Lane& l) {
      for (std::uint32_t i = 0; i < 32; ++i) {
        l.write(kShared, kCombined + i, l.read(kShared, kRight + i));
        l.write(kShared, kCombined + 32 + i, l.read(kShared, kLeft + i));
      }
    });
    k.phase("final_perm", 0, 64, [&](Lane& l) {
      std::uint32_t src = l.read(kRot, kFp + l.id());
      l.write(kOut, b * 64 + l.id(), l.read(kShared, kCombined + src - 1));
    });
  }
}

PassResult crypt_launch(std::span<const BitVector> blocks, const SubkeySchedule& ks,
                        Direction dir, const SimOptions& options,
                        std::uint32_t launch_index, KernelTrace& trace) {
  if (blocks.empty()) throw UsageFault("kernel launch needs at least one block");
  const auto n = static_cast<std::uint32_t>(blocks.size());

  Launch k(launch_index, {n, kCryptBlockWidth}, kCryptSharedCells, options, trace);

  Cells& in = k.memory(kIn);
  in.reserve(std::size_t{n} * 64);
  for (const auto& b : blocks) {
    if (b.width() != 64) throw UsageFault("kernel input block must be 64 bits");
    in.insert(in.end(), b.cells().begin(), b.cells().end());
  }
  // Host side: round keys are uploaded in the order the kernel consumes them.
  Cells& keys = k.memory(kKeys);
  for (const auto& sk : round_keys(ks, dir)) {
    keys.insert(keys.end(), sk.cells().begin(), sk.cells().end());
  }
  k.memory(kOut).assign(std::size_t{n} * 64, 0);

  run_crypt_launch(k, n);

  PassResult result;
  const Cells& out = k.memory(kOut);
  result.blocks.reserve(n);
  for (std::uint32_t b = 0; b < n; ++b) {
    result.blocks.push_back(
        BitVector::from_cells(std::span<const std::uint8_t>(out).subspan(b * 64, 64)));
  }
  return result;
}

}  // namespace

const std::vector<std::uint8_t>& read_only_image() {
  static const Cells img = build_read_only_image();
  return img;
}

std::string_view to_string(MemorySpace space) noexcept {
  switch (space) {
    case MemorySpace::ReadOnlyTables: return "read_only_tables";
    case MemorySpace::ConstantShift: return "constant_shift";
    case MemorySpace::SharedBlock: return "shared_block";
    case MemorySpace::GlobalIn: return "global_in";
    case MemorySpace::GlobalOut: return "global_out";
    case MemorySpace::GlobalKeys: return "global_keys";
  }
  return "unknown";
}

MemoryStats& MemoryStats::operator+=(const MemoryStats& rhs) {
  for (std::size_t i = 0; i < kMemorySpaceCount; ++i) {
    by_space[i].reads += rhs.by_space[i].reads;
    by_space[i].writes += rhs.by_space[i].writes;
  }
  return *this;
}

std::span<const TableRegion> read_only_layout() noexcept { return kLayout; }

const TableRegion* table_region_of(std::uint32_t cell) noexcept {
  for (const auto& r : kLayout) {
    if (cell >= r.offset && cell < r.offset + r.size) return &r;
  }
  return nullptr;
}

KeygenResult sim_keygen(const KeyTriple& keys, const SimOptions& options) {
  KeygenResult result;
  Launch k(0, {3, kKeygenBlockWidth}, kKgSharedCells, options, result.trace);

  const auto& t = load_tables();
  Cells& shift = k.memory(kShift);
  shift.assign(t.shift_schedule.amounts.begin(), t.shift_schedule.amounts.end());
  Cells& key_bits = k.memory(kKeys);
  for (std::size_t i = 0; i < 3; ++i) {
    if (keys[i].width() != 64) throw UsageFault("base keys must be 64 bits");
    key_bits.insert(key_bits.end(), keys[i].cells().begin(), keys[i].cells().end());
  }
  k.memory(kOut).assign(3 * 16 * 48, 0);

  for (std::uint32_t b = 0; b < 3; ++b) {
    k.begin_block(b);
    k.phase("pc_1", 0, 56, [&](Lane& l) {
      std::uint32_t src = l.read(kRot, kPc1 + l.id());
      l.write(kShared, kKgPermuted + l.id(), l.read(kKeys, b * 64 + src - 1));
    });
    k.phase("split", 0, 1, [&](Lane& l) {
      for (std::uint32_t i = 0; i < 28; ++i) {
        l.write(kShared, kKgC + i, l.read(kShared, kKgPermuted + i));
        l.write(kShared, kKgD + i, l.read(kShared, kKgPermuted + 28 + i));
      }
    });
    for (int r = 1; r <= 16; ++r) {
      // Lane 0 rotates C, lane 1 rotates D.
      k.phase("shift", r, 2, [&](Lane& l) {
        std::uint32_t base = l.id() == 0 ? kKgC : kKgD;
        std::uint32_t amount = l.read(kShift, static_cast<std::uint32_t>(r - 1));
        std::array<std::uint8_t, 28> half{};
        for (std::uint32_t i = 0; i < 28; ++i) half[i] = l.read(kShared, base + i);
        for (std::uint32_t i = 0; i < 28; ++i) {
          l.write(kShared, base + i, half[(i + amount) % 28]);
        }
      });
      const std::uint32_t out_row = (b * 16 + static_cast<std::uint32_t>(r - 1)) * 48;
      k.phase("pc_2", r, 48, [&](Lane& l) {
        std::uint32_t src = l.read(kRot, kPc2 + l.id());
        l.write(kOut, out_row + l.id(), l.read(kShared, kKgC + src - 1));
      });
    }
  }

  std::span<const std::uint8_t> out(k.memory(kOut));
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t r = 0; r < 16; ++r) {
      result.schedule.schedules[b].subkeys[r] =
          BitVector::from_cells(out.subspan((b * 16 + r) * 48, 48));
    }
  }
  return result;
}

PassResult sim_des_pass(std::span<const BitVector> blocks, const SubkeySchedule& ks,
                        Direction dir, const SimOptions& options) {
  KernelTrace trace;
  PassResult result = crypt_launch(blocks, ks, dir, options, 0, trace);
  result.trace = std::move(trace);
  return result;
}

PassResult sim_tdes(std::span<const BitVector> blocks, const TripleSchedule& ts,
                    Direction dir, const SimOptions& options) {
  const auto& s = ts.schedules;
  struct Step {
    const SubkeySchedule* ks;
    Direction dir;
  };
  const std::array<Step, 3> steps =
      dir == Direction::Encrypt
          ? std::array<Step, 3>{{{&s[0], Direction::Encrypt},
                                 {&s[1], Direction::Decrypt},
                                 {&s[2], Direction::Encrypt}}}
          : std::array<Step, 3>{{{&s[2], Direction::Decrypt},
                                 {&s[1], Direction::Encrypt},
                                 {&s[0], Direction::Decrypt}}};

  KernelTrace trace;
  std::vector<BitVector> data(blocks.begin(), blocks.end());
  for (std::uint32_t i = 0; i < 3; ++i) {
    data = crypt_launch(data, *steps[i].ks, steps[i].dir, options, i, trace).blocks;
  }
  return {std::move(data), std::move(trace)};
}

RaceReport check_race_freedom(const KernelTrace& trace) {
  RaceReport report;
  for (std::size_t p = 0; p < trace.phases.size(); ++p) {
    const auto& phase = trace.phases[p];
    std::map<std::tuple<MemorySpace, std::uint32_t, std::uint32_t>,
             std::vector<std::uint32_t>>
        writers;
    for (const auto& a : phase.accesses) {
      if (a.op != AccessOp::Write) continue;
      auto& lanes = writers[{a.space, a.thread.block_index, a.cell}];
      if (std::find(lanes.begin(), lanes.end(), a.thread.lane) == lanes.end()) {
        lanes.push_back(a.thread.lane);
      }
    }
    for (auto& [key, lanes] : writers) {
      if (lanes.size() < 2) continue;
      auto [space, block, cell] = key;
      report.push_back({p, phase.phase_name, phase.launch, block, space, cell, lanes});
    }
  }
  return report;
}

MemoryStats memory_stats(const KernelTrace& trace) {
  if (trace.phases.empty()) return trace.stats;
  MemoryStats total;
  for (const auto& p : trace.phases) total += p.counts;
  return total;
}

std::vector<Access> uninitialized_shared_reads(const KernelTrace& trace) {
  std::vector<Access> bad;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<bool>> written;
  for (const auto& phase : trace.phases) {
    auto& init = written[{phase.launch, phase.block_index}];
    std::vector<std::uint32_t> committed;
    for (const auto& a : phase.accesses) {
      if (a.space != MemorySpace::SharedBlock) continue;
      if (a.op == AccessOp::Read) {
        if (a.cell >= init.size() || !init[a.cell]) bad.push_back(a);
      } else {
        committed.push_back(a.cell);
      }
    }
    for (auto cell : committed) {
      if (cell >= init.size()) init.resize(cell + 1, false);
      init[cell] = true;
    }
  }
  return bad;
}

std::uint64_t sbox_table_reads(const PhaseRecord& phase) {
  const TableRegion& sbox = kLayout.back();
  return static_cast<std::uint64_t>(std::count_if(
      phase.accesses.begin(), phase.accesses.end(), [&](const Access& a) {
        return a.space == MemorySpace::ReadOnlyTables && a.op == AccessOp::Read &&
               a.cell >= sbox.offset && a.cell < sbox.offset + sbox.size;
      }));
}

void write_trace(std::ostream& out, const KernelTrace& trace) {
  for (const auto& phase : trace.phases) {
    for (const auto& a : phase.accesses) {
      out << phase.phase_name << ',' << phase.round << ',' << a.thread.block_index << ','
          << a.thread.lane << ',' << to_string(a.space) << ',' << a.cell << ','
          << (a.op == AccessOp::Read ? "read" : "write") << '\n';
    }
  }
}

}  // namespace tdes::sim
