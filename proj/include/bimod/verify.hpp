#pragma once

// Executable verifiers for the structure theorems, plus a seeded fuzzer.
// Failures are data: every check produces a report, never an exception.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bimod/core.hpp"

namespace bimod {

struct VerifierReport {
  std::string theorem_id;
  std::string instance_digest;
  bool passed = false;
  std::string detail;  // witness on pass, concrete counterexample on failure
};

struct FuzzConfig {
  std::uint64_t seed = 0;
  int instance_count = 0;
  int max_rows = 8;
  int max_cols = 8;
  double density = 0.3;
  int numeric_trials_per_instance = 5;
};

struct FuzzSummary {
  int instances_run = 0;
  int failures = 0;
  std::map<std::string, std::pair<int, int>> per_theorem;  // id -> (pass, fail)
  std::vector<std::string> counterexamples;
};

// Eighteen reports covering the decomposition, contraction, module-family,
// semilattice, atom, block, rank/Schatten and annihilator identities. Numeric
// checks draw `numeric_trials` random matrices supported on p from rng_seed.
std::vector<VerifierReport> verify_all(const Pattern& p, int numeric_trials,
                                       std::uint64_t rng_seed);

// Rectangle structure of a pattern TRO: total atomicity, block reconstruction,
// and the central-support round trip over the block sub-ideals.
std::vector<VerifierReport> verify_tro_theorems(const Pattern& m,
                                                std::uint64_t rng_seed);

FuzzSummary fuzz(const FuzzConfig& config);

void tally(FuzzSummary& summary, const std::vector<VerifierReport>& reports);

}  // namespace bimod
