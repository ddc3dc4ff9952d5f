#pragma once

// Structure theory of a pattern viewed as the support of a reflexive
// diagonal-bimodule: neighborhood maps, the two canonical semilattices, the
// diagonal and off-diagonal parts, atoms and their rectangular blocks, the
// derived module families, and the rectangle structure of pattern TROs.

#include <string>
#include <utility>
#include <vector>

#include "bimod/core.hpp"

namespace bimod {

// An atom: a minimal difference F = P \ P0 in the column semilattice together
// with its image difference delta_f on rows, plus the witnessing pair.
struct Atom {
  IndexSet f;             // over cols, nonempty
  IndexSet delta_f;       // over rows
  IndexSet generator_p;   // member of s1 with f = generator_p \ generator_p0
  IndexSet generator_p0;  // member of s1
  bool operator==(const Atom& o) const { return f == o.f && delta_f == o.delta_f; }
};

// One rectangular summand E x F of the diagonal.
struct Block {
  IndexSet rows;  // E
  IndexSet cols;  // F
  bool operator==(const Block& o) const { return rows == o.rows && cols == o.cols; }
};

struct Semilattices {
  ProjectionFamily s1;  // over cols: meet closed, contains the identity
  ProjectionFamily s2;  // over rows: join closed, contains zero
};

struct DiagonalSummary {
  Pattern delta;
  std::vector<Atom> atoms;
  std::vector<Block> blocks;  // nonempty rectangles tiling delta
  IndexSet chi_i;             // row support of delta
  IndexSet chi_star_i;        // col support of delta
  bool raw_atoms_disjoint = true;  // informational, not asserted
};

struct ModuleFamilies {
  Pattern n1;    // cols x cols: the algebra of s1
  Pattern n2;    // rows x rows: the algebra of s2
  Pattern l1;    // cols x cols: off-diagonal ideal of n1
  Pattern l2;    // rows x rows
  Partition a1;  // cols: commutant blocks of s1
  Partition a2;  // rows: commutant blocks of s2
};

struct BimoduleAnalysis {
  Pattern pattern;
  ProjectionFamily s1, s2;
  Pattern delta, u0;
  std::vector<Atom> atoms;
  std::vector<Block> blocks;
  IndexSet chi_i, chi_star_i;
  Pattern n1, n2, l1, l2;
  Partition a1, a2;
  std::string psi_note;
};

// Bipartite neighborhood of a column set: rows that meet it. Preserves unions
// and the empty set.
IndexSet map_phi(const Pattern& p, const IndexSet& c);

// Neighborhood in the transposed direction: columns a row set meets.
IndexSet map_phi_star(const Pattern& p, const IndexSet& r);

// s2 = union closure of the single-column images plus the zero projection;
// s1 = complements of the union closure of the single-row images. The
// restriction of map_phi to s1 is a bijection onto s2 whose inverse sends Q
// to the complement of map_phi_star of the complement of Q.
Semilattices semilattices(const Pattern& p);

// Entries whose matrix unit intertwines every member of s1 with its image.
Pattern delta_pattern(const Pattern& p);
Pattern delta_pattern(const Pattern& p, const ProjectionFamily& s1);

// Entries of p admitting a witness P in s1 with row inside the image and
// column outside P. Complements delta_pattern inside p.
Pattern u0_pattern(const Pattern& p);
Pattern u0_pattern(const Pattern& p, const ProjectionFamily& s1);

std::vector<Atom> atoms(const Pattern& p);
std::vector<Atom> atoms(const Pattern& p, const Semilattices& sl);

// Blocks, supports and tiling assertions for the diagonal. Throws
// invariant_violation when the rectangles fail to tile delta disjointly.
DiagonalSummary diagonal_summary(const Pattern& p);
DiagonalSummary diagonal_summary(const Pattern& p, const Semilattices& sl);

// Non-throwing variant used by the verifier suite: structural violations are
// appended to `violations` and the partial summary is still returned.
DiagonalSummary diagonal_summary_lenient(const Pattern& p, const Semilattices& sl,
                                         std::vector<std::string>& violations);

ModuleFamilies module_families(const Pattern& p);
ModuleFamilies module_families(const Pattern& p, const Semilattices& sl);

// True iff the boolean triple product p p^T p stays inside p.
bool tro_check(const Pattern& p);

// Central supports of a TRO ideal m0 of m: column and row support of m0.
// Validates the ideal inclusions and names the violated one on failure.
std::pair<IndexSet, IndexSet> tro_ideal_split(const Pattern& m, const Pattern& m0);

// Connected components of the bipartite graph of a pattern TRO; each must be
// a complete rectangle, otherwise invariant_violation.
std::vector<Block> tro_block_decomposition(const Pattern& m);

// Reflexive-hull fixed point check. Computed two ways: from single-index
// diagonal compressions and from the semilattice characterization; both must
// reproduce p.
bool ref_check(const Pattern& p);

// All unions of the membership-profile cells of the family: the projections
// of its bicommutant. Rejects families with more than max_cells cells.
ProjectionFamily bicommutant_projections(const ProjectionFamily& f, int max_cells = 20);

BimoduleAnalysis analyze(const Pattern& p);

}  // namespace bimod
