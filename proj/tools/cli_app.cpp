#include "cli_app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "tdes/bench.hpp"
#include "tdes/des.hpp"
#include "tdes/ecb.hpp"
#include "tdes/error.hpp"
#include "tdes/kernel_sim.hpp"
#include "tdes/keys.hpp"
#include "tdes/selftest.hpp"

namespace tdes::cli {
namespace {

struct KeyArgs {
  std::string key1, key2, key3;

  void attach(CLI::App& cmd) {
    cmd.add_option("--key1", key1, "First key, 16 hex digits")->required();
    cmd.add_option("--key2", key2, "Second key, 16 hex digits")->required();
    cmd.add_option("--key3", key3, "Third key, 16 hex digits")->required();
  }

  KeyTriple parse() const { return {parse_key(key1), parse_key(key2), parse_key(key3)}; }
};

struct EngineArgs {
  std::string padding = "pkcs7";
  std::string engine = "parallel";
  unsigned workers = default_workers();
  std::size_t chunk_blocks = kDefaultChunkBlocks;

  void attach(CLI::App& cmd, bool with_padding = true) {
    if (with_padding) {
      cmd.add_option("--padding", padding, "strict|pkcs7")
          ->check(CLI::IsMember({"strict", "pkcs7"}))
          ->capture_default_str();
    }
    cmd.add_option("--engine", engine, "reference|simulated|parallel")
        ->check(CLI::IsMember({"reference", "simulated", "parallel"}))
        ->capture_default_str();
    cmd.add_option("--workers", workers, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--chunk-blocks", chunk_blocks, "Blocks per work unit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  EngineConfig config() const {
    EngineConfig cfg;
    cfg.engine = parse_engine(engine);
    cfg.padding = parse_padding(padding);
    cfg.workers = workers;
    cfg.chunk_blocks = chunk_blocks;
    return cfg;
  }
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFault("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFault("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw IoFault("write to '" + path + "' failed");
}

std::vector<std::uint8_t> transform(std::span<const std::uint8_t> input, const KeyTriple& keys,
                                    Direction dir, const EngineConfig& cfg) {
  auto ts = triple_schedule(keys);
  if (dir == Direction::Encrypt) {
    return ecb_process(pad(input, cfg.padding), ts, dir, cfg);
  }
  auto plain = ecb_process(Payload({input.begin(), input.end()}), ts, dir, cfg);
  return unpad(plain, cfg.padding);
}

std::vector<BitVector> to_blocks(const Payload& p) {
  std::vector<BitVector> blocks;
  for (std::size_t off = 0; off < p.data().size(); off += 8) {
    blocks.push_back(bytes_to_bits(p.data().subspan(off, 8)));
  }
  return blocks;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triple DES toolkit: ECB file encryption, kernel simulation, benchmarks"};
  app.require_subcommand(1);

  KeyArgs keys;
  EngineArgs engine;
  std::string in_path, out_path, trace_path, csv_path;

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file in ECB mode");
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a file in ECB mode");
  for (auto* cmd : {encrypt, decrypt}) {
    keys.attach(*cmd);
    engine.attach(*cmd);
    cmd->add_option("--in", in_path, "Input file")->required();
    cmd->add_option("--out", out_path, "Output file")->required();
  }

  auto* keygen = app.add_subcommand("keygen", "Print the 3x16 round keys, one per line");
  keys.attach(*keygen);

  std::string sim_mode = "encrypt";
  auto* simulate = app.add_subcommand("simulate", "Run the bit-level kernel simulator");
  keys.attach(*simulate);
  simulate->add_option("--in", in_path, "Input file")->required();
  simulate->add_option("--out", out_path, "Output file")->required();
  simulate->add_option("--trace", trace_path, "Access trace output file")->required();
  simulate->add_option("--padding", engine.padding, "strict|pkcs7")
      ->check(CLI::IsMember({"strict", "pkcs7"}))
      ->capture_default_str();
  simulate->add_option("--mode", sim_mode, "encrypt|decrypt")
      ->check(CLI::IsMember({"encrypt", "decrypt"}))
      ->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "Run the built-in verification suite");

  std::string sizes = "2..17";
  std::string engines = "reference,parallel";
  bench::BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Time ECB encryption over growing sizes");
  bench_cmd->add_option("--sizes", sizes, "Block-count exponents, lo..hi or a,b,c")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench_opts.repeats, "Timed runs per size (>= 3)")
      ->check(CLI::Range(3U, 1000000U))
      ->capture_default_str();
  bench_cmd->add_option("--warmup", bench_opts.warmup, "Untimed runs per size")
      ->capture_default_str();
  bench_cmd->add_option("--engines", engines, "Comma-separated engine names")
      ->capture_default_str();
  bench_cmd->add_option("--csv", csv_path, "Write CSV here instead of stdout");
  engine.attach(*bench_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (encrypt->parsed() || decrypt->parsed()) {
      Direction dir = encrypt->parsed() ? Direction::Encrypt : Direction::Decrypt;
      write_file(out_path, transform(read_file(in_path), keys.parse(), dir, engine.config()));
      return 0;
    }

    if (keygen->parsed()) {
      auto ts = triple_schedule(keys.parse());
      for (const auto& ks : ts.schedules) {
        for (const auto& sk : ks.subkeys) out << to_hex(sk) << '\n';
      }
      return 0;
    }

    if (simulate->parsed()) {
      auto input = read_file(in_path);
      Direction dir = sim_mode == "encrypt" ? Direction::Encrypt : Direction::Decrypt;
      auto policy = parse_padding(engine.padding);
      Payload payload = dir == Direction::Encrypt
                            ? pad(input, policy)
                            : Payload(std::vector<std::uint8_t>(input.begin(), input.end()));
      if (payload.block_count() == 0) throw UsageFault("nothing to simulate: input is empty");

      auto kg = sim::sim_keygen(keys.parse());
      auto result = sim::sim_tdes(to_blocks(payload), kg.schedule, dir);

      std::vector<std::uint8_t> bytes;
      for (const auto& b : result.blocks) {
        auto octets = bits_to_bytes(b);
        bytes.insert(bytes.end(), octets.begin(), octets.end());
      }
      if (dir == Direction::Decrypt) bytes = unpad(bytes, policy);
      write_file(out_path, bytes);

      std::ofstream trace(trace_path, std::ios::trunc);
      if (!trace) throw IoFault("cannot open '" + trace_path + "' for writing");
      sim::write_trace(trace, result.trace);
      if (!trace) throw IoFault("write to '" + trace_path + "' failed");

      auto races = sim::check_race_freedom(kg.trace);
      auto crypt_races = sim::check_race_freedom(result.trace);
      races.insert(races.end(), crypt_races.begin(), crypt_races.end());
      auto stats = sim::memory_stats(result.trace);
      out << "launches: " << result.trace.launches.size() << " x "
          << result.trace.launches.front().blocks << " blocks x "
          << result.trace.launches.front().block_width << " lanes\n";
      for (auto space : sim::kAllMemorySpaces) {
        out << sim::to_string(space) << ": reads=" << stats[space].reads
            << " writes=" << stats[space].writes << '\n';
      }
      out << "races: " << races.size() << '\n';
      return races.empty() ? 0 : 1;
    }

    if (selftest->parsed()) {
      bool ok = true;
      for (const auto& r : run_selftest()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.passed) out << ": " << r.detail;
        out << '\n';
        ok = ok && r.passed;
      }
      out << (ok ? "selftest passed" : "selftest FAILED") << '\n';
      return ok ? 0 : 1;
    }

    if (bench_cmd->parsed()) {
      bench_opts.size_exponents = bench::parse_size_exponents(sizes);
      EngineConfig cfg = engine.config();
      auto ts = triple_schedule(bench::bench_keys());
      std::vector<bench::BenchEngine> list;
      std::stringstream names(engines);
      for (std::string name; std::getline(names, name, ',');) {
        list.push_back(bench::make_engine(parse_engine(name), cfg, ts));
      }
      auto records = bench::run_bench(bench_opts, list);
      if (csv_path.empty()) {
        bench::write_csv(out, records);
      } else {
        std::ofstream csv(csv_path, std::ios::trunc);
        if (!csv) throw IoFault("cannot open '" + csv_path + "' for writing");
        bench::write_csv(csv, records);
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tdes::cli
