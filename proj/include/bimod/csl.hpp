#pragma once

// Single-space specialization: the algebra of a commutative projection
// lattice, its off-diagonal ideal, the radical as the strict part of the
// induced preorder, the defect projection q, and the commutant partition.

#include <cstdint>
#include <vector>

#include "bimod/core.hpp"
#include "bimod/rng.hpp"
#include "bimod/verify.hpp"

namespace bimod {

struct CslInput {
  int universe = 0;
  std::vector<IndexSet> generators;
};

struct CslAnalysis {
  ProjectionFamily lattice;  // meet/join closure of the generators with 0 and 1
  Pattern alg;               // n x n: column-inside-implies-row-inside entries
  Pattern j;                 // off-diagonal ideal spanned by P T (1-P)
  Pattern rad;               // strict part of the preorder
  IndexSet q;                // union of E minus psi(E) over the lattice
  Partition commutant;       // membership-profile cells
  std::vector<IndexSet> atoms_of_s;  // the cells, in canonical order
};

CslAnalysis csl_analyze(const CslInput& input, std::size_t closure_cap = 4096);

// Six reports: the ideal/radical agreement, the psi characterization of the
// radical, the two direct-sum formulas, and the cross-checks against
// u0_pattern and delta_pattern of the algebra.
std::vector<VerifierReport> verify_csl_theorems(const CslInput& input);

CslInput random_csl_input(Rng& rng, int max_universe);

}  // namespace bimod
