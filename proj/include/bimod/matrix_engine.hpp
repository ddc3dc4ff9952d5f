#pragma once

// Numeric side of the decomposition: per-projection Schur masks, the mask
// iteration that stabilizes on the diagonal, the block projector, the split
// of a supported matrix into diagonal and off-diagonal parts, singular-value
// functionals, trace annihilators, and partial-isometry generation.

#include <span>
#include <vector>

#include "bimod/matrix.hpp"
#include "bimod/pattern_core.hpp"

namespace bimod {

// Mask that keeps the (image x set) and (image-complement x set-complement)
// corners for one member of the column semilattice.
SchurMask mask_for(const Pattern& p, const IndexSet& pset);

struct IterationResult {
  std::vector<Matrix> trace;  // trace.front() is the input, one entry per mask
  Matrix final;               // equals trace.back()
};

// Applies mask_for over every member of s1 in canonical order. The final
// iterate is exactly the Schur compression onto delta_pattern(p).
IterationResult u_iteration(const Pattern& p, const Matrix& t);
IterationResult u_iteration(const Pattern& p, const Matrix& t,
                            std::span<const IndexSet> order);

// Sum of block compressions E t F over the diagonal blocks.
Matrix block_projector_d(const Pattern& p, const Matrix& t);
Matrix block_projector_d(const DiagonalSummary& summary, const Matrix& t);

struct DecompositionResult {
  Matrix l;        // diagonal part, supported on delta_pattern
  Matrix m;        // remainder, supported on u0_pattern
  int iterations;  // masks applied by the realizing iteration
  double residual; // max-abs of input - (l + m)
};

// Splits t = m + l for t supported on p (off-pattern entries above 1e-12 are
// rejected). The two routes (mask iteration, block projector) are compared
// exactly before returning.
DecompositionResult decompose(const Pattern& p, const Matrix& t);

double operator_norm(const Matrix& t);                 // largest singular value
double schatten_norm(const Matrix& t, double pexp);    // pexp >= 1
int numeric_rank(const Matrix& t, double tol = 1e-8);  // sv > tol * largest

// Dimension of {T supported on `space` : tr(T R*) = 0 for every matrix unit R
// of `rank_ones`}, computed by a trace-pairing linear system over the pattern
// basis. For pattern inputs this equals |space minus rank_ones|.
int annihilator_intersection(const Pattern& space, const Pattern& rank_ones);

// 0/1 partial isometry saturating every rectangle of a pattern TRO: within
// each block the k-th smallest row is paired with the k-th smallest column.
// Pass delta_pattern(p), or a TRO pattern directly.
Matrix construct_partial_isometry(const Pattern& tro);
Matrix partial_isometry_from_blocks(int rows, int cols, const std::vector<Block>& blocks);

// Dimension of span{B2 v B1} over matrix-unit pairs inside the partition
// cells, by numeric rank of the collected vectorized products.
int span_dimension_generated(const Matrix& v, const Partition& a1, const Partition& a2);

}  // namespace bimod
