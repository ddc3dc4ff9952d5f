#pragma once

// Dense complex matrices and 0/1 Schur multipliers at desk scale.

#include <complex>
#include <cstdint>
#include <vector>

#include "bimod/core.hpp"

namespace bimod {

using cplx = std::complex<double>;

class Matrix {
 public:
  Matrix(int rows, int cols);  // zero filled; dimensions must be positive

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool operator==(const Matrix& o) const;
  bool is_finite() const;

 private:
  int rows_, cols_;
  std::vector<cplx> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix matrix_unit(int rows, int cols, int i, int j);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Entrywise 0/1 multiplier.
struct SchurMask {
  int rows, cols;
  std::vector<std::uint8_t> on;

  SchurMask(int r, int c) : rows(r), cols(c), on(static_cast<std::size_t>(r) * c, 0) {}
  static SchurMask from_pattern(const Pattern& p);
  bool at(int i, int j) const { return on[static_cast<std::size_t>(i) * cols + j]; }
  void set(int i, int j, bool v = true) {
    on[static_cast<std::size_t>(i) * cols + j] = v ? 1 : 0;
  }
  bool operator==(const SchurMask& o) const {
    return rows == o.rows && cols == o.cols && on == o.on;
  }
};

// Entrywise product; idempotent, and a norm contraction for the masks built
// from semilattice members or diagonal blocks.
Matrix schur_apply(const SchurMask& mask, const Matrix& t);

// Trace of the product a b; requires a.cols == b.rows and b.cols == a.rows.
cplx trace_pair(const Matrix& a, const Matrix& b);

}  // namespace bimod
