#include "tdes/tables.hpp"

#include <algorithm>
#include <numeric>

namespace tdes {
namespace {

TableSet make_tables() {
  TableSet t;

  // Permuted choice 1: 64-bit key to 56 bits, parity bits dropped.
  t.pc_1 = {"pc_1",
            {57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
             10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
             63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
             14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4},
            64};

  t.shift_schedule.amounts = {1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1};

  // Key compression: 56 bits to a 48-bit round key.
  t.pc_2 = {"pc_2",
            {14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10,
             23, 19, 12, 4,  26, 8,  16, 7,  27, 20, 13, 2,
             41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48,
             44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32},
            56};

  t.initial_perm = {"initial_perm",
                    {58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28,
                     20, 12, 4,  62, 54, 46, 38, 30, 22, 14, 6, 64, 56,
                     48, 40, 32, 24, 16, 8,  57, 49, 41, 33, 25, 17, 9,
                     1,  59, 51, 43, 35, 27, 19, 11, 3,  61, 53, 45, 37,
                     29, 21, 13, 5,  63, 55, 47, 39, 31, 23, 15, 7},
                    64};

  t.exp_d = {"exp_d",
             {32, 1,  2,  3,  4,  5,  4,  5,  6,  7,  8,  9,
              8,  9,  10, 11, 12, 13, 12, 13, 14, 15, 16, 17,
              16, 17, 18, 19, 20, 21, 20, 21, 22, 23, 24, 25,
              24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1},
             32};

  t.sboxes.boxes = {{
      {{{14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7},
        {0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8},
        {4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0},
        {15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13}}},
      {{{15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10},
        {3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5},
        {0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15},
        {13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9}}},
      {{{10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8},
        {13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1},
        {13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7},
        {1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12}}},
      {{{7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15},
        {13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9},
        {10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4},
        {3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14}}},
      {{{2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9},
        {14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6},
        {4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14},
        {11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3}}},
      {{{12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11},
        {10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8},
        {9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6},
        {4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13}}},
      {{{4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1},
        {13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6},
        {1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2},
        {6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12}}},
      {{{13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7},
        {1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2},
        {7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8},
        {2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11}}},
  }};

  t.per = {"per",
           {16, 7, 20, 21, 29, 12, 28, 17, 1,  15, 23, 26, 5,  18, 31, 10,
            2,  8, 24, 14, 32, 27, 3,  9,  19, 13, 30, 6,  22, 11, 4,  25},
           32};

  t.final_perm = {"final_perm",
                  {40, 8,  48, 16, 56, 24, 64, 32, 39, 7,  47, 15, 55,
                   23, 63, 31, 38, 6,  46, 14, 54, 22, 62, 30, 37, 5,
                   45, 13, 53, 21, 61, 29, 36, 4,  44, 12, 52, 20, 60,
                   28, 35, 3,  43, 11, 51, 19, 59, 27, 34, 2,  42, 10,
                   50, 18, 58, 26, 33, 1,  41, 9,  49, 17, 57, 25},
                  64};
  return t;
}

// occurrences[v] for v in 1..range; entries outside the range are ignored
// here and caught by the bounds check.
std::vector<int> histogram(const PermutationTable& t, int range) {
  std::vector<int> counts(static_cast<std::size_t>(range) + 1, 0);
  for (int e : t.entries) {
    if (e >= 1 && e <= range) ++counts[static_cast<std::size_t>(e)];
  }
  return counts;
}

void add(ValidationReport& r, std::string name, bool ok, std::string detail = {}) {
  r.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(detail)});
}

void check_shape(ValidationReport& r, const PermutationTable& t, int in_width,
                 int out_width) {
  bool ok = t.in_width == in_width && t.out_width() == out_width;
  add(r, t.name + " dimensions", ok,
      "expected " + std::to_string(in_width) + "->" + std::to_string(out_width) +
          ", got " + std::to_string(t.in_width) + "->" +
          std::to_string(t.out_width()));

  auto bad = std::find_if(t.entries.begin(), t.entries.end(),
                          [&](int e) { return e < 1 || e > t.in_width; });
  add(r, t.name + " entries within input width", bad == t.entries.end(),
      bad == t.entries.end() ? "" : "entry " + std::to_string(*bad) + " out of range");
}

void check_distinct(ValidationReport& r, const PermutationTable& t) {
  auto counts = histogram(t, t.in_width);
  auto dup = std::find_if(counts.begin(), counts.end(), [](int c) { return c > 1; });
  add(r, t.name + " entries distinct", dup == counts.end(),
      dup == counts.end() ? ""
                          : "value " + std::to_string(dup - counts.begin()) +
                                " repeated");
}

void check_permutation(ValidationReport& r, const PermutationTable& t, int n) {
  auto counts = histogram(t, n);
  bool ok = t.out_width() == n &&
            std::all_of(counts.begin() + 1, counts.end(), [](int c) { return c == 1; });
  add(r, t.name + " is a permutation of 1.." + std::to_string(n), ok,
      "not every value appears exactly once");
}

}  // namespace

const TableSet& load_tables() {
  static const TableSet tables = make_tables();
  return tables;
}

bool ValidationReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const TableCheck& c) { return c.passed; });
}

const TableCheck* ValidationReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate_tables(const TableSet& t) {
  ValidationReport r;

  check_shape(r, t.pc_1, 64, 56);
  check_distinct(r, t.pc_1);
  {
    auto parity = std::find_if(t.pc_1.entries.begin(), t.pc_1.entries.end(),
                               [](int e) { return e % 8 == 0; });
    add(r, "pc_1 excludes parity positions", parity == t.pc_1.entries.end(),
        parity == t.pc_1.entries.end()
            ? ""
            : "parity position " + std::to_string(*parity) + " selected");
  }

  check_shape(r, t.pc_2, 56, 48);
  check_distinct(r, t.pc_2);

  check_shape(r, t.initial_perm, 64, 64);
  check_permutation(r, t.initial_perm, 64);
  check_shape(r, t.final_perm, 64, 64);
  check_permutation(r, t.final_perm, 64);
  {
    bool inverse = t.initial_perm.out_width() == 64 && t.final_perm.out_width() == 64;
    for (int i = 1; inverse && i <= 64; ++i) {
      int ip = t.initial_perm.entry(i);
      inverse = ip >= 1 && ip <= 64 && t.final_perm.entry(ip) == i;
    }
    add(r, "IP/FP mutual inverse", inverse, "final_perm[initial_perm[i]] != i");
  }

  check_shape(r, t.per, 32, 32);
  check_permutation(r, t.per, 32);

  check_shape(r, t.exp_d, 32, 48);
  {
    auto counts = histogram(t.exp_d, 32);
    bool covered = std::all_of(counts.begin() + 1, counts.end(),
                               [](int c) { return c >= 1; });
    add(r, "exp_d covers 1..32", covered, "some input bit never selected");
    auto doubled = std::count(counts.begin() + 1, counts.end(), 2);
    bool at_most_two = std::all_of(counts.begin() + 1, counts.end(),
                                   [](int c) { return c <= 2; });
    add(r, "exp_d duplicates exactly 16 values", doubled == 16 && at_most_two,
        std::to_string(doubled) + " values appear twice");
  }

  {
    const auto& a = t.shift_schedule.amounts;
    bool unit = std::all_of(a.begin(), a.end(), [](int s) { return s == 1 || s == 2; });
    add(r, "shift_keys amounts in {1,2}", unit, "amount outside {1,2}");
    int sum = std::accumulate(a.begin(), a.end(), 0);
    add(r, "shift_keys sum to 28", sum == 28, "sum is " + std::to_string(sum));
  }

  {
    bool nibbles = true;
    bool rows_permute = true;
    for (const auto& box : t.sboxes.boxes) {
      for (const auto& row : box) {
        std::array<int, 16> seen{};
        for (auto v : row) {
          if (v > 15) {
            nibbles = false;
          } else {
            ++seen[v];
          }
        }
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
          rows_permute = false;
        }
      }
    }
    add(r, "S-box values in 0..15", nibbles, "value above 15");
    add(r, "S-box rows are permutations of 0..15", rows_permute,
        "a row repeats or misses a value");
  }

  return r;
}

}  // namespace tdes
