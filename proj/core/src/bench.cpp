#include "tdes/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <random>

#include "tdes/error.hpp"
#include "tdes/keys.hpp"

namespace tdes::bench {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <class T>
T parse_number(std::string_view field, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw UsageFault("bad " + std::string(what) + " field '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

KeyTriple bench_keys() {
  return {parse_key("0123456789ABCDEF"), parse_key("23456789ABCDEF01"),
          parse_key("456789ABCDEF0123")};
}

BenchEngine make_engine(EngineKind kind, const EngineConfig& cfg, const TripleSchedule& ts) {
  EngineConfig c = cfg;
  c.engine = kind;
  return {std::string(to_string(kind)), [c, ts](const Payload& p) {
            auto start = std::chrono::steady_clock::now();
            auto out = ecb_process(p, ts, Direction::Encrypt, c);
            auto stop = std::chrono::steady_clock::now();
            // Keep the result observable so the work is not elided.
            volatile std::uint8_t sink = out.empty() ? 0 : out.back();
            (void)sink;
            return std::chrono::duration<double, std::milli>(stop - start).count();
          }};
}

Payload random_payload(std::uint64_t blocks) {
  std::mt19937_64 rng(kPayloadSeed + blocks);
  std::vector<std::uint8_t> data(blocks * 8);
  for (std::size_t i = 0; i < data.size(); i += 8) {
    std::uint64_t word = rng();
    for (std::size_t j = 0; j < 8; ++j) {
      data[i + j] = static_cast<std::uint8_t>(word >> (56 - 8 * j));
    }
  }
  return Payload(std::move(data));
}

double median(std::vector<double> values) {
  if (values.empty()) throw UsageFault("median of an empty sample");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

BenchRecord make_record(std::string engine, std::uint64_t blocks, std::uint32_t repeats,
                        double median_ms) {
  BenchRecord r;
  r.engine = std::move(engine);
  r.blocks = blocks;
  r.bytes = blocks * 8;
  r.repeats = repeats;
  r.median_ms = median_ms;
  r.throughput_mb_s =
      median_ms > 0.0 ? static_cast<double>(r.bytes) / (median_ms * 1000.0) : 0.0;
  return r;
}

std::vector<BenchRecord> run_bench(const BenchOptions& options,
                                   const std::vector<BenchEngine>& engines) {
  if (options.size_exponents.empty()) throw UsageFault("bench needs at least one size");
  if (options.repeats < 3) throw UsageFault("bench needs at least 3 repeats");
  for (int e : options.size_exponents) {
    if (e < 0 || e > 40) throw UsageFault("size exponent " + std::to_string(e) + " out of range");
  }

  std::vector<BenchRecord> records;
  for (const auto& engine : engines) {
    for (int e : options.size_exponents) {
      const std::uint64_t blocks = std::uint64_t{1} << e;
      Payload payload = random_payload(blocks);
      for (std::uint32_t i = 0; i < options.warmup; ++i) engine.run_ms(payload);
      std::vector<double> samples;
      samples.reserve(options.repeats);
      for (std::uint32_t i = 0; i < options.repeats; ++i) {
        samples.push_back(engine.run_ms(payload));
      }
      records.push_back(make_record(engine.name, blocks, options.repeats, median(samples)));
    }
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.engine << ',' << r.blocks << ',' << r.bytes << ',' << r.repeats << ','
        << format_double(r.median_ms) << ',' << format_double(r.throughput_mb_s) << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw UsageFault("benchmark CSV is missing its header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 6) throw UsageFault("benchmark CSV row has " + std::to_string(f.size()) + " fields");
    BenchRecord r;
    r.engine = std::string(f[0]);
    r.blocks = parse_number<std::uint64_t>(f[1], "blocks");
    r.bytes = parse_number<std::uint64_t>(f[2], "bytes");
    r.repeats = parse_number<std::uint32_t>(f[3], "repeats");
    r.median_ms = parse_number<double>(f[4], "median_ms");
    r.throughput_mb_s = parse_number<double>(f[5], "throughput_mb_s");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<int> parse_size_exponents(std::string_view spec) {
  std::vector<int> out;
  if (auto dots = spec.find(".."); dots != std::string_view::npos) {
    int lo = parse_number<int>(spec.substr(0, dots), "size range");
    int hi = parse_number<int>(spec.substr(dots + 2), "size range");
    if (lo > hi) throw UsageFault("size range is empty");
    for (int e = lo; e <= hi; ++e) out.push_back(e);
    return out;
  }
  for (auto part : split(spec, ',')) out.push_back(parse_number<int>(part, "size"));
  return out;
}

}  // namespace tdes::bench
