#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "support/des_oracle.hpp"
#include "tdes/error.hpp"
#include "tdes/kernel_sim.hpp"
#include "tdes/phase_machine.hpp"

namespace tdes::sim {
namespace {

using testutil::bits;

std::vector<BitVector> random_blocks(std::mt19937_64& rng, std::size_t n) {
  std::vector<BitVector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(bits(rng()));
  return out;
}

KeyTriple random_keys(std::mt19937_64& rng) { return testutil::keys(rng(), rng(), rng()); }

TEST(ReadOnlyLayoutTest, RegionsTileTheSpace) {
  std::uint32_t next = 0;
  for (const auto& r : read_only_layout()) {
    EXPECT_EQ(r.offset, next) << r.name;
    next = r.offset + r.size;
  }
  EXPECT_EQ(table_region_of(0)->name, "pc_1");
  EXPECT_EQ(table_region_of(next - 1)->name, "sbox");
  EXPECT_EQ(table_region_of(next), nullptr);
}

TEST(SimKeygenTest, MatchesReferenceSchedule) {
  std::mt19937_64 rng(100);
  for (int i = 0; i < 100; ++i) {
    auto keys = random_keys(rng);
    SimOptions quiet{.record_accesses = false, .record_phases = false};
    ASSERT_EQ(sim_keygen(keys, quiet).schedule, triple_schedule(keys));
  }
}

TEST(SimKeygenTest, ZeroKeysStillRunFullPhaseStructure) {
  auto r = sim_keygen(testutil::keys(0, 0, 0));
  EXPECT_EQ(r.schedule, triple_schedule(testutil::keys(0, 0, 0)));
  ASSERT_EQ(r.trace.launches.size(), 1U);
  EXPECT_EQ(r.trace.launches[0], (Grid{3, 56}));
  EXPECT_EQ(r.trace.phases.size(), 3U * (2 + 16 * 2));
  // Block-major, flowchart order within each block.
  EXPECT_EQ(r.trace.phases[0].phase_name, "pc_1");
  EXPECT_EQ(r.trace.phases[1].phase_name, "split");
  EXPECT_EQ(r.trace.phases[2].phase_name, "shift");
  EXPECT_EQ(r.trace.phases[2].round, 1);
  EXPECT_EQ(r.trace.phases[3].phase_name, "pc_2");
  EXPECT_EQ(r.trace.phases[33].round, 16);
  EXPECT_EQ(r.trace.phases[34].block_index, 1U);
}

TEST(SimKeygenTest, AccessCounts) {
  auto r = sim_keygen(testutil::keys(0x133457799BBCDFF1ULL, 1, 2));
  auto stats = memory_stats(r.trace);
  EXPECT_EQ(stats, r.trace.stats);
  EXPECT_EQ(stats[MemorySpace::ConstantShift].reads, 96U);
  EXPECT_EQ(stats[MemorySpace::ConstantShift].writes, 0U);
  EXPECT_EQ(stats[MemorySpace::ReadOnlyTables].writes, 0U);
  EXPECT_GE(stats[MemorySpace::ReadOnlyTables].reads, 3U * (56 + 16 * 48));
  EXPECT_EQ(stats[MemorySpace::GlobalKeys].reads, 3U * 56);
  EXPECT_EQ(stats[MemorySpace::GlobalOut].writes, 3U * 16 * 48);
  EXPECT_EQ(stats[MemorySpace::GlobalOut].reads, 0U);
}

TEST(SimKeygenTest, LaneRanges) {
  auto r = sim_keygen(testutil::keys(7, 8, 9));
  for (const auto& p : r.trace.phases) {
    std::uint32_t limit = p.phase_name == "pc_1"    ? 56
                          : p.phase_name == "pc_2"  ? 48
                          : p.phase_name == "shift" ? 2
                                                    : 1;
    EXPECT_EQ(p.active_lanes, limit) << p.phase_name;
    for (const auto& a : p.accesses) ASSERT_LT(a.thread.lane, limit) << p.phase_name;
  }
}

TEST(SimDesPassTest, KnownAnswerBlock) {
  auto ks = key_schedule(bits(0x133457799BBCDFF1ULL));
  std::vector<BitVector> in{bits(0x0123456789ABCDEFULL)};
  auto r = sim_des_pass(in, ks, Direction::Encrypt);
  ASSERT_EQ(r.blocks.size(), 1U);
  EXPECT_EQ(r.blocks[0].to_u64(), 0x85E813540F0AB405ULL);
  EXPECT_EQ(r.trace.launches, (std::vector<Grid>{{1, 64}}));
}

TEST(SimDesPassTest, MatchesReferenceBothDirections) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 40; ++i) {
    auto ks = key_schedule(bits(rng()));
    auto blocks = random_blocks(rng, 1 + i % 4);
    for (auto dir : {Direction::Encrypt, Direction::Decrypt}) {
      auto r = sim_des_pass(blocks, ks, dir, {.record_accesses = false});
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        ASSERT_EQ(r.blocks[b], des_block(blocks[b], ks, dir));
      }
    }
  }
}

TEST(SimDesPassTest, IdenticalBlocksGiveIdenticalSlices) {
  auto ks = key_schedule(bits(0x0E329232EA6D0D73ULL));
  std::vector<BitVector> in(4, bits(0x8787878787878787ULL));
  auto r = sim_des_pass(in, ks, Direction::Encrypt);
  for (const auto& b : r.blocks) EXPECT_EQ(b, r.blocks[0]);

  const std::size_t per_block = r.trace.phases.size() / 4;
  ASSERT_EQ(per_block * 4, r.trace.phases.size());
  for (std::size_t blk = 1; blk < 4; ++blk) {
    for (std::size_t p = 0; p < per_block; ++p) {
      const auto& a = r.trace.phases[p];
      const auto& b = r.trace.phases[blk * per_block + p];
      ASSERT_EQ(a.phase_name, b.phase_name);
      ASSERT_EQ(a.counts, b.counts);
      ASSERT_EQ(a.accesses.size(), b.accesses.size());
      for (std::size_t k = 0; k < a.accesses.size(); ++k) {
        auto x = a.accesses[k];
        auto y = b.accesses[k];
        ASSERT_EQ(y.thread.block_index, blk);
        // Global cells are offset by block; shared cells are per-block.
        if (x.space == MemorySpace::GlobalIn || x.space == MemorySpace::GlobalOut) {
          ASSERT_EQ(y.cell, x.cell + 64 * blk);
        } else {
          ASSERT_EQ(y.cell, x.cell);
        }
        ASSERT_EQ(y.thread.lane, x.thread.lane);
        ASSERT_EQ(y.op, x.op);
      }
    }
  }
}

TEST(SimDesPassTest, SboxReadsAndLaneLimits) {
  std::mt19937_64 rng(102);
  auto ks = key_schedule(bits(rng()));
  constexpr std::size_t kBlocks = 3;
  auto r = sim_des_pass(random_blocks(rng, kBlocks), ks, Direction::Encrypt);
  std::uint64_t total_sbox = 0;
  for (const auto& p : r.trace.phases) {
    auto sbox = sbox_table_reads(p);
    total_sbox += sbox;
    if (p.phase_name == "sbox_lookup") {
      EXPECT_EQ(sbox, 8U);
      std::set<std::uint32_t> readers;
      for (const auto& a : p.accesses) {
        if (a.space == MemorySpace::ReadOnlyTables) readers.insert(a.thread.lane);
      }
      EXPECT_EQ(readers, (std::set<std::uint32_t>{0, 4, 8, 12, 16, 20, 24, 28}));
    } else {
      EXPECT_EQ(sbox, 0U) << p.phase_name;
    }
    std::uint32_t limit = 64;
    if (p.phase_name == "expand" || p.phase_name == "key_xor") limit = 48;
    if (p.phase_name == "sbox_lookup" || p.phase_name == "sbox_scatter" ||
        p.phase_name == "p_perm" || p.phase_name == "left_xor" || p.phase_name == "swap") {
      limit = 32;
    }
    if (p.phase_name == "split" || p.phase_name == "combine") limit = 1;
    EXPECT_LE(p.active_lanes, limit) << p.phase_name;
    for (const auto& a : p.accesses) ASSERT_LT(a.thread.lane, limit) << p.phase_name;
  }
  EXPECT_EQ(total_sbox, kBlocks * 16 * 8);
}

TEST(SimDesPassTest, SboxScatterWritesOneBitPerLane) {
  auto r = sim_des_pass(std::vector<BitVector>{bits(1)}, key_schedule(bits(2)),
                        Direction::Encrypt);
  for (const auto& p : r.trace.phases) {
    if (p.phase_name != "sbox_scatter") continue;
    std::vector<int> writes(32, 0);
    for (const auto& a : p.accesses) {
      if (a.op == AccessOp::Write) ++writes[a.thread.lane];
    }
    for (int w : writes) EXPECT_EQ(w, 1);
  }
}

TEST(SimDesPassTest, GlobalCountsPerLaunch) {
  std::mt19937_64 rng(103);
  constexpr std::uint64_t kBlocks = 5;
  auto r = sim_des_pass(random_blocks(rng, kBlocks), key_schedule(bits(rng())),
                        Direction::Decrypt);
  auto s = memory_stats(r.trace);
  EXPECT_EQ(s[MemorySpace::GlobalOut].writes, kBlocks * 64);
  EXPECT_EQ(s[MemorySpace::GlobalOut].reads, 0U);
  EXPECT_EQ(s[MemorySpace::GlobalIn].reads, kBlocks * 64);
  EXPECT_EQ(s[MemorySpace::GlobalIn].writes, 0U);
  EXPECT_EQ(s[MemorySpace::GlobalKeys].reads, kBlocks * 16 * 48);
  EXPECT_EQ(s[MemorySpace::ReadOnlyTables].writes, 0U);
  EXPECT_EQ(s[MemorySpace::ConstantShift].writes, 0U);
}

TEST(SimDesPassTest, Preconditions) {
  auto ks = key_schedule(bits(1));
  EXPECT_THROW(sim_des_pass({}, ks, Direction::Encrypt), UsageFault);
  std::vector<BitVector> narrow{BitVector(32)};
  EXPECT_THROW(sim_des_pass(narrow, ks, Direction::Encrypt), UsageFault);
}

TEST(SimTdesTest, MatchesReferenceAndRoundTrips) {
  std::mt19937_64 rng(104);
  for (int i = 0; i < 20; ++i) {
    auto ts = triple_schedule(random_keys(rng));
    auto blocks = random_blocks(rng, 1 + i % 5);
    auto enc = sim_tdes(blocks, ts, Direction::Encrypt);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      ASSERT_EQ(enc.blocks[b], tdes_encrypt_block(blocks[b], ts));
    }
    auto dec = sim_tdes(enc.blocks, ts, Direction::Decrypt);
    ASSERT_EQ(dec.blocks, blocks);
    ASSERT_TRUE(check_race_freedom(enc.trace).empty());
    ASSERT_TRUE(check_race_freedom(dec.trace).empty());
    ASSERT_TRUE(uninitialized_shared_reads(enc.trace).empty());
  }
}

TEST(SimTdesTest, ThreeLaunches) {
  std::mt19937_64 rng(105);
  auto r = sim_tdes(random_blocks(rng, 6), triple_schedule(random_keys(rng)),
                    Direction::Encrypt);
  ASSERT_EQ(r.trace.launches.size(), 3U);
  for (const auto& g : r.trace.launches) EXPECT_EQ(g, (Grid{6, 64}));
  std::set<std::uint32_t> launches;
  for (const auto& p : r.trace.phases) launches.insert(p.launch);
  EXPECT_EQ(launches, (std::set<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(memory_stats(r.trace)[MemorySpace::GlobalOut].writes, 3U * 6 * 64);
}

TEST(SimTdesTest, Deterministic) {
  std::mt19937_64 rng(106);
  auto ts = triple_schedule(random_keys(rng));
  auto blocks = random_blocks(rng, 3);
  auto a = sim_tdes(blocks, ts, Direction::Encrypt);
  auto b = sim_tdes(blocks, ts, Direction::Encrypt);
  EXPECT_EQ(a.blocks, b.blocks);
  EXPECT_EQ(a.trace, b.trace);

  auto keys = random_keys(rng);
  EXPECT_EQ(sim_keygen(keys).trace, sim_keygen(keys).trace);
}

TEST(SimTdesTest, SuppressedTraceKeepsOutputAndTotals) {
  std::mt19937_64 rng(107);
  auto ts = triple_schedule(random_keys(rng));
  auto blocks = random_blocks(rng, 4);
  auto full = sim_tdes(blocks, ts, Direction::Encrypt);
  auto lean = sim_tdes(blocks, ts, Direction::Encrypt, {.record_accesses = false});
  auto bare = sim_tdes(blocks, ts, Direction::Encrypt,
                       {.record_accesses = false, .record_phases = false});
  EXPECT_EQ(lean.blocks, full.blocks);
  EXPECT_EQ(bare.blocks, full.blocks);
  EXPECT_EQ(lean.trace.phases.size(), full.trace.phases.size());
  for (const auto& p : lean.trace.phases) EXPECT_TRUE(p.accesses.empty());
  EXPECT_TRUE(bare.trace.phases.empty());
  EXPECT_EQ(memory_stats(bare.trace), memory_stats(full.trace));
  EXPECT_EQ(memory_stats(lean.trace), memory_stats(full.trace));
}

TEST(TraceChecksTest, PerPhaseCountsMatchAccessLists) {
  auto r = sim_keygen(testutil::keys(3, 4, 5));
  for (const auto& p : r.trace.phases) {
    MemoryStats recount;
    for (const auto& a : p.accesses) {
      auto& c = recount[a.space];
      (a.op == AccessOp::Read ? c.reads : c.writes) += 1;
    }
    ASSERT_EQ(recount, p.counts) << p.phase_name;
  }
}

TEST(TraceChecksTest, KernelTracesAreRaceFreeAndInitialized) {
  auto kg = sim_keygen(testutil::keys(11, 22, 33));
  EXPECT_TRUE(check_race_freedom(kg.trace).empty());
  EXPECT_TRUE(uninitialized_shared_reads(kg.trace).empty());
}

TEST(TraceChecksTest, ConstructedRaceIsReported) {
  KernelTrace t;
  t.launches.push_back({1, 64});
  PhaseRecord p{"bad", 0, 0, 0, 2, {}, {}};
  p.accesses.push_back({{0, 0}, MemorySpace::SharedBlock, 5, AccessOp::Write});
  p.accesses.push_back({{0, 1}, MemorySpace::SharedBlock, 5, AccessOp::Write});
  p.accesses.push_back({{0, 1}, MemorySpace::SharedBlock, 6, AccessOp::Write});
  t.phases.push_back(p);
  auto report = check_race_freedom(t);
  ASSERT_EQ(report.size(), 1U);
  EXPECT_EQ(report[0].cell, 5U);
  EXPECT_EQ(report[0].space, MemorySpace::SharedBlock);
  EXPECT_EQ(report[0].writer_lanes, (std::vector<std::uint32_t>{0, 1}));
}

TEST(TraceChecksTest, SameCellInDifferentBlocksIsNotARace) {
  KernelTrace t;
  PhaseRecord p{"ok", 0, 0, 0, 1, {}, {}};
  p.accesses.push_back({{0, 0}, MemorySpace::SharedBlock, 5, AccessOp::Write});
  p.accesses.push_back({{1, 0}, MemorySpace::SharedBlock, 5, AccessOp::Write});
  t.phases.push_back(p);
  EXPECT_TRUE(check_race_freedom(t).empty());
}

TEST(TraceChecksTest, UninitializedSharedReadIsReported) {
  KernelTrace t;
  PhaseRecord p{"early", 0, 0, 0, 1, {}, {}};
  p.accesses.push_back({{0, 0}, MemorySpace::SharedBlock, 3, AccessOp::Write});
  p.accesses.push_back({{0, 0}, MemorySpace::SharedBlock, 3, AccessOp::Read});
  t.phases.push_back(p);
  PhaseRecord q{"late", 0, 0, 0, 1, {}, {}};
  q.accesses.push_back({{0, 0}, MemorySpace::SharedBlock, 3, AccessOp::Read});
  t.phases.push_back(q);
  // The same-phase read sees pre-phase state; the later read is fine.
  auto bad = uninitialized_shared_reads(t);
  ASSERT_EQ(bad.size(), 1U);
  EXPECT_EQ(bad[0].cell, 3U);
}

TEST(TraceExportTest, LineFormat) {
  auto r = sim_des_pass(std::vector<BitVector>{bits(0)}, key_schedule(bits(0)),
                        Direction::Encrypt);
  std::ostringstream out;
  write_trace(out, r.trace);
  std::istringstream in(out.str());
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "load,0,0,0,global_in,0,read");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "load,0,0,0,shared_block,0,write");

  std::size_t lines = 1 + 1;
  std::string last;
  while (std::getline(in, line)) {
    ++lines;
    last = line;
  }
  std::uint64_t expected = 0;
  for (const auto& c : r.trace.stats.by_space) expected += c.reads + c.writes;
  EXPECT_EQ(lines, expected);
  EXPECT_EQ(last, "final_perm,0,0,63,global_out,63,write");
}

struct ToyKernel {
  SimOptions options;
  KernelTrace trace;
  PhaseMachine m{0, {1, 8}, 8, options, trace};
  ToyKernel() { m.begin_block(0); }
};

TEST(PhaseMachineTest, ConflictingWritesRaiseRaceFault) {
  ToyKernel k;
  EXPECT_THROW(k.m.phase("clash", 0, 2,
                         [](PhaseMachine::Lane& l) { l.write(MemorySpace::SharedBlock, 3, 1); }),
               RaceFault);
}

TEST(PhaseMachineTest, SameCellInLaterPhaseIsFine) {
  ToyKernel k;
  for (int i = 0; i < 2; ++i) {
    k.m.phase("one", 0, 1, [](PhaseMachine::Lane& l) { l.write(MemorySpace::SharedBlock, 3, 1); });
  }
  EXPECT_EQ(k.m.memory(MemorySpace::SharedBlock)[3], 1);
}

TEST(PhaseMachineTest, ReadsSeePreviousPhase) {
  ToyKernel k;
  // Shift left by one: lane i reads cell i+1 while lane i+1 overwrites it.
  k.m.phase("seed", 0, 8, [](PhaseMachine::Lane& l) {
    l.write(MemorySpace::SharedBlock, l.id(), static_cast<int>(l.id()));
  });
  k.m.phase("shift", 0, 7, [](PhaseMachine::Lane& l) {
    l.write(MemorySpace::SharedBlock, l.id(), l.read(MemorySpace::SharedBlock, l.id() + 1) * 2);
  });
  const auto& cells = k.m.memory(MemorySpace::SharedBlock);
  for (std::uint32_t i = 0; i < 7; ++i) EXPECT_EQ(cells[i], 2 * (i + 1)) << i;
  EXPECT_EQ(k.trace.phases.size(), 2U);
}

TEST(PhaseMachineTest, OutOfRangeAndReadOnlyAccessRaiseIndexFault) {
  ToyKernel k;
  EXPECT_THROW(k.m.phase("oob", 0, 1,
                         [](PhaseMachine::Lane& l) { l.read(MemorySpace::SharedBlock, 8); }),
               IndexFault);
  EXPECT_THROW(k.m.phase("rot", 0, 1,
                         [](PhaseMachine::Lane& l) { l.write(MemorySpace::ReadOnlyTables, 0, 1); }),
               IndexFault);
  EXPECT_THROW(k.m.phase("wide", 0, 9, [](PhaseMachine::Lane&) {}), IndexFault);
}

TEST(MemorySpaceTest, Names) {
  std::set<std::string_view> names;
  for (auto s : kAllMemorySpaces) names.insert(to_string(s));
  EXPECT_EQ(names.size(), kMemorySpaceCount);
  EXPECT_EQ(to_string(MemorySpace::ConstantShift), "constant_shift");
}

}  // namespace
}  // namespace tdes::sim
