#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tdes {

// Source-bit indices are 1-based, exactly as the DES tables are printed.
struct PermutationTable {
  std::string name;
  std::vector<int> entries;
  int in_width = 0;

  int out_width() const noexcept { return static_cast<int>(entries.size()); }
  // Entry for output position pos (1-based).
  int entry(int pos) const { return entries.at(static_cast<std::size_t>(pos - 1)); }
};

struct ShiftSchedule {
  std::array<int, 16> amounts{};
};

// boxes[g][row][col], each value a 4-bit nibble.
struct SboxSet {
  using Box = std::array<std::array<std::uint8_t, 16>, 4>;
  std::array<Box, 8> boxes{};
};

struct TableSet {
  PermutationTable pc_1;
  PermutationTable pc_2;
  PermutationTable initial_perm;
  PermutationTable exp_d;
  PermutationTable per;
  PermutationTable final_perm;
  ShiftSchedule shift_schedule;
  SboxSet sboxes;
};

// The compiled-in DES constants. The returned reference stays valid for the
// life of the program and is never modified.
const TableSet& load_tables();

struct TableCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<TableCheck> checks;

  bool all_passed() const noexcept;
  const TableCheck* find(std::string_view name) const noexcept;
};

// Runs every structural rule against `tables`. Failures are reported as
// entries, never thrown.
ValidationReport validate_tables(const TableSet& tables);

}  // namespace tdes
