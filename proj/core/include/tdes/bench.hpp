#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tdes/ecb.hpp"

namespace tdes::bench {

// Seed for benchmark payloads; the payload for n blocks is drawn from
// mt19937_64(kPayloadSeed + n).
inline constexpr std::uint64_t kPayloadSeed = 0x3DE5'2024'0001ULL;

// Fixed benchmark keys (NIST SP 800-67 sample key bundle).
KeyTriple bench_keys();

struct BenchRecord {
  std::string engine;
  std::uint64_t blocks = 0;
  std::uint64_t bytes = 0;
  std::uint32_t repeats = 0;
  double median_ms = 0.0;
  // Decimal megabytes (1e6 octets) per second; 0 when median_ms is 0.
  double throughput_mb_s = 0.0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// A measurable engine: runs once over the payload and returns elapsed
// wall-clock milliseconds.
struct BenchEngine {
  std::string name;
  std::function<double(const Payload&)> run_ms;
};

// Times ecb_process encryption with the given engine kind.
BenchEngine make_engine(EngineKind kind, const EngineConfig& cfg, const TripleSchedule& ts);

struct BenchOptions {
  // Block-count exponents; size 2^e for each e.
  std::vector<int> size_exponents;
  std::uint32_t repeats = 5;
  std::uint32_t warmup = 1;
};

Payload random_payload(std::uint64_t blocks);

double median(std::vector<double> values);

BenchRecord make_record(std::string engine, std::uint64_t blocks, std::uint32_t repeats,
                        double median_ms);

// Rows ordered engine-major, then by ascending size.
std::vector<BenchRecord> run_bench(const BenchOptions& options,
                                   const std::vector<BenchEngine>& engines);

inline constexpr std::string_view kCsvHeader =
    "engine,blocks,bytes,repeats,median_ms,throughput_mb_s";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);

// Parses "lo..hi" or a comma-separated list of exponents.
std::vector<int> parse_size_exponents(std::string_view spec);

}  // namespace tdes::bench
