#include <benchmark/benchmark.h>

#include "tdes/bench.hpp"
#include "tdes/des.hpp"
#include "tdes/ecb.hpp"
#include "tdes/kernel_sim.hpp"

namespace {

const tdes::TripleSchedule& schedule() {
  static const tdes::TripleSchedule ts = tdes::triple_schedule(tdes::bench::bench_keys());
  return ts;
}

void BM_KeySchedule(benchmark::State& state) {
  auto keys = tdes::bench::bench_keys();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tdes::triple_schedule(keys));
  }
}
BENCHMARK(BM_KeySchedule);

void BM_TdesBlock(benchmark::State& state) {
  auto block = tdes::BitVector::from_u64(0x0123456789ABCDEFULL);
  for (auto _ : state) {
    block = tdes::tdes_encrypt_block(block, schedule());
    benchmark::DoNotOptimize(block);
  }
  state.SetBytesProcessed(state.iterations() * 8);
}
BENCHMARK(BM_TdesBlock);

void BM_Ecb(benchmark::State& state, tdes::EngineKind kind) {
  const auto blocks = static_cast<std::uint64_t>(state.range(0));
  auto payload = tdes::bench::random_payload(blocks);
  tdes::EngineConfig cfg;
  cfg.engine = kind;
  for (auto _ : state) {
    auto out = tdes::ecb_process(payload, schedule(), tdes::Direction::Encrypt, cfg);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(blocks) * 8);
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Ecb, reference, tdes::EngineKind::Reference)
    ->RangeMultiplier(4)->Range(4, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK_CAPTURE(BM_Ecb, parallel, tdes::EngineKind::Parallel)
    ->RangeMultiplier(4)->Range(4, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SimTdes(benchmark::State& state) {
  std::vector<tdes::BitVector> blocks(static_cast<std::size_t>(state.range(0)),
                                      tdes::BitVector::from_u64(0x0123456789ABCDEFULL));
  tdes::sim::SimOptions quiet{.record_accesses = false, .record_phases = false};
  for (auto _ : state) {
    auto r = tdes::sim::sim_tdes(blocks, schedule(), tdes::Direction::Encrypt, quiet);
    benchmark::DoNotOptimize(r.blocks.data());
  }
}
BENCHMARK(BM_SimTdes)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
