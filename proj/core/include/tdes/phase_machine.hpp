#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tdes/error.hpp"
#include "tdes/kernel_sim.hpp"

namespace tdes::sim {

// Cell image of the ReadOnlyTables space, laid out per read_only_layout().
const std::vector<std::uint8_t>& read_only_image();

inline bool is_read_only(MemorySpace s) {
  return s == MemorySpace::ReadOnlyTables || s == MemorySpace::ConstantShift ||
         s == MemorySpace::GlobalIn || s == MemorySpace::GlobalKeys;
}

// Executes one kernel launch block by block, phase by phase. Within a phase
// every read sees the state committed by the previous phase; writes are
// buffered and committed together when the phase ends.
class PhaseMachine {
 public:
  using Cells = std::vector<std::uint8_t>;

  PhaseMachine(std::uint32_t index, Grid grid, std::uint32_t shared_cells,
               const SimOptions& options, KernelTrace& trace)
      : index_(index), grid_(grid), shared_cells_(shared_cells), options_(options),
        trace_(trace) {
    mem_[static_cast<std::size_t>(MemorySpace::ReadOnlyTables)] = read_only_image();
    trace_.launches.push_back(grid);
  }

  Cells& memory(MemorySpace s) { return mem_[static_cast<std::size_t>(s)]; }

  void begin_block(std::uint32_t block) {
    block_ = block;
    memory(MemorySpace::SharedBlock).assign(shared_cells_, 0);
  }

  class Lane {
   public:
    Lane(PhaseMachine& launch, std::uint32_t id) : launch_(launch), id_(id) {}
    std::uint32_t id() const noexcept { return id_; }
    std::uint8_t read(MemorySpace s, std::uint32_t cell) { return launch_.read(id_, s, cell); }
    void write(MemorySpace s, std::uint32_t cell, int value) {
      launch_.write(id_, s, cell, static_cast<std::uint8_t>(value));
    }

   private:
    PhaseMachine& launch_;
    std::uint32_t id_;
  };

  template <class Body>
  void phase(std::string_view name, int round, std::uint32_t lanes, Body&& body) {
    if (lanes > grid_.block_width) {
      throw IndexFault(std::string(name) + " uses " + std::to_string(lanes) +
                       " lanes in a block of " + std::to_string(grid_.block_width));
    }
    ++serial_;
    current_ = PhaseRecord{name, round, index_, block_, lanes, {}, {}};
    pending_.clear();
    for (std::uint32_t lane = 0; lane < lanes; ++lane) {
      Lane l(*this, lane);
      body(l);
    }
    commit();
    trace_.stats += current_.counts;
    if (options_.record_phases) trace_.phases.push_back(std::move(current_));
  }

 private:
  struct PendingWrite {
    MemorySpace space;
    std::uint32_t cell;
    std::uint8_t value;
    std::uint32_t lane;
  };

  void check_cell(std::uint32_t lane, MemorySpace s, std::uint32_t cell) {
    if (cell >= memory(s).size()) {
      throw IndexFault("block " + std::to_string(block_) + " lane " +
                       std::to_string(lane) + " in phase " +
                       std::string(current_.phase_name) + " accessed " +
                       std::string(to_string(s)) + " cell " + std::to_string(cell) +
                       " (size " + std::to_string(memory(s).size()) + ")");
    }
  }

  void record(std::uint32_t lane, MemorySpace s, std::uint32_t cell, AccessOp op) {
    auto& c = current_.counts[s];
    (op == AccessOp::Read ? c.reads : c.writes) += 1;
    if (options_.record_accesses) {
      current_.accesses.push_back({{block_, lane}, s, cell, op});
    }
  }

  std::uint8_t read(std::uint32_t lane, MemorySpace s, std::uint32_t cell) {
    check_cell(lane, s, cell);
    record(lane, s, cell, AccessOp::Read);
    return memory(s)[cell];
  }

  void write(std::uint32_t lane, MemorySpace s, std::uint32_t cell, std::uint8_t value) {
    check_cell(lane, s, cell);
    if (is_read_only(s)) {
      throw IndexFault("write to read-only space " + std::string(to_string(s)) +
                       " in phase " + std::string(current_.phase_name));
    }
    record(lane, s, cell, AccessOp::Write);
    pending_.push_back({s, cell, value, lane});
  }

  void commit() {
    for (const auto& w : pending_) {
      auto& stamps = stamps_[static_cast<std::size_t>(w.space)];
      if (stamps.size() < memory(w.space).size()) stamps.resize(memory(w.space).size(), 0);
      std::uint64_t& stamp = stamps[w.cell];
      std::uint64_t mine = serial_ * 128 + w.lane;
      if (stamp / 128 == serial_ && stamp != mine) {
        throw RaceFault("lanes " + std::to_string(stamp % 128) + " and " +
                        std::to_string(w.lane) + " both wrote " +
                        std::string(to_string(w.space)) + " cell " +
                        std::to_string(w.cell) + " in phase " +
                        std::string(current_.phase_name) + " of block " +
                        std::to_string(block_));
      }
      stamp = mine;
    }
    for (const auto& w : pending_) memory(w.space)[w.cell] = w.value;
  }

  std::uint32_t index_;
  Grid grid_;
  std::uint32_t shared_cells_;
  const SimOptions& options_;
  KernelTrace& trace_;
  std::array<Cells, kMemorySpaceCount> mem_;
  std::array<std::vector<std::uint64_t>, kMemorySpaceCount> stamps_;
  std::vector<PendingWrite> pending_;
  PhaseRecord current_;
  std::uint32_t block_ = 0;
  std::uint64_t serial_ = 0;
};

}  // namespace tdes::sim
