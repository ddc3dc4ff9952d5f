#include "bimod/rng.hpp"

namespace bimod {

Pattern random_pattern(Rng& rng, int max_rows, int max_cols, double density) {
  const int rows = 1 + rng.below(max_rows);
  const int cols = 1 + rng.below(max_cols);
  Pattern p(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng.bernoulli(density)) p.set(i, j);
  return p;
}

Pattern random_tro_pattern(Rng& rng, int max_rows, int max_cols, int max_blocks) {
  const int rows = 1 + rng.below(max_rows);
  const int cols = 1 + rng.below(max_cols);
  const int k = 1 + rng.below(max_blocks);
  // Label 0 leaves the row or column untouched; equal nonzero labels form a
  // full rectangle, so distinct labels stay disjoint.
  std::vector<int> row_label(rows), col_label(cols);
  for (int i = 0; i < rows; ++i) row_label[i] = rng.below(k + 1);
  for (int j = 0; j < cols; ++j) col_label[j] = rng.below(k + 1);
  Pattern p(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (row_label[i] != 0 && row_label[i] == col_label[j]) p.set(i, j);
  return p;
}

Matrix random_matrix_on(Rng& rng, const Pattern& p) {
  Matrix t(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.at(i, j)) t(i, j) = rng.box();
  return t;
}

}  // namespace bimod
