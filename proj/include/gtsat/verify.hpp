#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gtsat {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Property suites over randomized formulas/CNFs: the sign homomorphism, the
// sparse-gradient laws (uniqueness, negation parity, finite differences, the
// sign-product identity, unsatisfied-clause routing), the constructive
// representation, the probabilistic bridge between perturbed evaluation and
// exact enumeration, the categorical shift invariants, and the
// oscillation-vs-noise solver fixture.
std::vector<SuiteResult> run_verification(uint64_t seed);

}  // namespace gtsat
