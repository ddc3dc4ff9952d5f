#include "bimod/matrix_engine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bimod {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& t) {
  Eigen::MatrixXcd m(t.rows(), t.cols());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) m(i, j) = t(i, j);
  return m;
}

std::vector<double> singular_values(const Matrix& t) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(t));
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

}  // namespace

SchurMask mask_for(const Pattern& p, const IndexSet& pset) {
  if (pset.universe() != p.cols())
    throw input_error("mask_for: set universe " + std::to_string(pset.universe()) +
                      " does not match pattern cols " + std::to_string(p.cols()));
  const IndexSet image = map_phi(p, pset);
  SchurMask m(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i) {
    const bool in_image = image.contains(i);
    for (int j = 0; j < p.cols(); ++j)
      if (pset.contains(j) == in_image) m.set(i, j);
  }
  return m;
}

IterationResult u_iteration(const Pattern& p, const Matrix& t,
                            std::span<const IndexSet> order) {
  if (t.rows() != p.rows() || t.cols() != p.cols())
    throw input_error("u_iteration: matrix " + std::to_string(t.rows()) + "x" +
                      std::to_string(t.cols()) + " does not match pattern " +
                      std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
  IterationResult r{{t}, t};
  for (const auto& pset : order) {
    r.final = schur_apply(mask_for(p, pset), r.final);
    r.trace.push_back(r.final);
  }
  return r;
}

IterationResult u_iteration(const Pattern& p, const Matrix& t) {
  const Semilattices sl = semilattices(p);
  return u_iteration(p, t, sl.s1.sets());
}

Matrix block_projector_d(const DiagonalSummary& summary, const Matrix& t) {
  if (t.rows() != summary.delta.rows() || t.cols() != summary.delta.cols())
    throw input_error("block_projector_d: matrix does not match pattern shape");
  Matrix out(t.rows(), t.cols());
  for (const auto& b : summary.blocks)
    for (int i : b.rows.members())
      for (int j : b.cols.members()) out(i, j) = t(i, j);
  return out;
}

Matrix block_projector_d(const Pattern& p, const Matrix& t) {
  return block_projector_d(diagonal_summary(p), t);
}

DecompositionResult decompose(const Pattern& p, const Matrix& t) {
  if (t.rows() != p.rows() || t.cols() != p.cols())
    throw input_error("decompose: matrix shape does not match pattern");
  if (!t.is_finite()) throw input_error("decompose: matrix has non-finite entries");

  std::ostringstream offenders;
  int bad = 0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (!p.at(i, j) && std::abs(t(i, j)) > 1e-12) {
        if (bad < 8) offenders << " (" << i << "," << j << ")";
        ++bad;
      }
  if (bad > 0)
    throw input_error("decompose: " + std::to_string(bad) +
                      " entries lie outside the pattern:" + offenders.str());

  const Semilattices sl = semilattices(p);
  const DiagonalSummary summary = diagonal_summary(p, sl);
  Matrix l = block_projector_d(summary, t);
  const IterationResult iter = u_iteration(p, t, sl.s1.sets());
  if (!(iter.final == l))
    throw invariant_violation("mask iteration and block projector disagree on " +
                              digest(p));
  Matrix m = t - l;
  const double residual = max_abs_diff(t, l + m);
  return DecompositionResult{std::move(l), std::move(m),
                             static_cast<int>(iter.trace.size()) - 1, residual};
}

double operator_norm(const Matrix& t) {
  const auto sv = singular_values(t);
  return sv.empty() ? 0.0 : sv.front();
}

double schatten_norm(const Matrix& t, double pexp) {
  if (pexp < 1.0)
    throw input_error("schatten_norm: exponent must be >= 1, got " +
                      std::to_string(pexp));
  double sum = 0.0;
  for (double s : singular_values(t)) sum += std::pow(s, pexp);
  return std::pow(sum, 1.0 / pexp);
}

int numeric_rank(const Matrix& t, double tol) {
  if (tol <= 0.0) throw input_error("numeric_rank: tolerance must be positive");
  const auto sv = singular_values(t);
  if (sv.empty() || sv.front() == 0.0) return 0;
  int r = 0;
  for (double s : sv)
    if (s > tol * sv.front()) ++r;
  return r;
}

int annihilator_intersection(const Pattern& space, const Pattern& rank_ones) {
  if (space.rows() != rank_ones.rows() || space.cols() != rank_ones.cols())
    throw input_error("annihilator_intersection: pattern shapes differ");
  const auto basis = space.entries();
  const auto constraints = rank_ones.entries();
  const int d = static_cast<int>(basis.size());
  if (d == 0) return 0;
  if (constraints.empty()) return d;

  std::vector<Matrix> basis_units, constraint_adjoints;
  basis_units.reserve(basis.size());
  for (auto [i, j] : basis)
    basis_units.push_back(matrix_unit(space.rows(), space.cols(), i, j));
  for (auto [i, j] : constraints)
    constraint_adjoints.push_back(adjoint(matrix_unit(space.rows(), space.cols(), i, j)));

  Matrix c(static_cast<int>(constraints.size()), d);
  for (int k = 0; k < static_cast<int>(constraints.size()); ++k)
    for (int b = 0; b < d; ++b)
      c(k, b) = trace_pair(basis_units[b], constraint_adjoints[k]);
  return d - numeric_rank(c);
}

Matrix partial_isometry_from_blocks(int rows, int cols,
                                    const std::vector<Block>& blocks) {
  Matrix v(rows, cols);
  for (const auto& b : blocks) {
    const auto rs = b.rows.members();
    const auto cs = b.cols.members();
    const std::size_t k = std::min(rs.size(), cs.size());
    for (std::size_t t = 0; t < k; ++t) v(rs[t], cs[t]) = cplx{1.0, 0.0};
  }
  return v;
}

Matrix construct_partial_isometry(const Pattern& tro) {
  return partial_isometry_from_blocks(tro.rows(), tro.cols(),
                                      tro_block_decomposition(tro));
}

int span_dimension_generated(const Matrix& v, const Partition& a1,
                             const Partition& a2) {
  if (a1.universe() != v.cols() || a2.universe() != v.rows())
    throw input_error("span_dimension_generated: partitions do not match matrix shape");

  std::vector<Matrix> products;
  for (const auto& cell2 : a2.cells()) {
    const auto rs = cell2.members();
    for (int a : rs)
      for (int b : rs) {
        const Matrix left = matrix_unit(v.rows(), v.rows(), a, b);
        const Matrix lv = left * v;
        if (max_abs(lv) == 0.0) continue;
        for (const auto& cell1 : a1.cells()) {
          const auto cs = cell1.members();
          for (int c : cs)
            for (int d : cs) {
              Matrix prod = lv * matrix_unit(v.cols(), v.cols(), c, d);
              if (max_abs(prod) > 0.0) products.push_back(std::move(prod));
            }
        }
      }
  }
  if (products.empty()) return 0;

  Matrix stacked(static_cast<int>(products.size()), v.rows() * v.cols());
  for (int r = 0; r < static_cast<int>(products.size()); ++r)
    for (int i = 0; i < v.rows(); ++i)
      for (int j = 0; j < v.cols(); ++j)
        stacked(r, i * v.cols() + j) = products[r](i, j);
  return numeric_rank(stacked);
}

}  // namespace bimod
