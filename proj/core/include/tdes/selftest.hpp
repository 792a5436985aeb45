#pragma once

#include <string>
#include <vector>

namespace tdes {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Table structure, known-answer vectors, simulator equivalence and race
// freedom, and engine worker invariance. Deterministic (fixed seeds).
std::vector<SelftestResult> run_selftest();

}  // namespace tdes
