#include "bimod/matrix.hpp"

#include <cmath>

namespace bimod {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1)
    throw input_error("matrix dimensions must be positive, got " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  a_.assign(static_cast<std::size_t>(rows) * cols, cplx{0.0, 0.0});
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_finite() const {
  for (const auto& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {
void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw input_error(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) +
                      "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                      "x" + std::to_string(b.cols()));
}
}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "add");
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "subtract");
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw input_error("multiply: inner dimensions differ (" + std::to_string(a.cols()) +
                      " vs " + std::to_string(b.rows()) + ")");
  Matrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix adjoint(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

Matrix matrix_unit(int rows, int cols, int i, int j) {
  Matrix r(rows, cols);
  if (i < 0 || i >= rows || j < 0 || j >= cols)
    throw input_error("matrix unit index out of range");
  r(i, j) = cplx{1.0, 0.0};
  return r;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

SchurMask SchurMask::from_pattern(const Pattern& p) {
  SchurMask m(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.at(i, j)) m.set(i, j);
  return m;
}

Matrix schur_apply(const SchurMask& mask, const Matrix& t) {
  if (mask.rows != t.rows() || mask.cols != t.cols())
    throw input_error("schur_apply: mask " + std::to_string(mask.rows) + "x" +
                      std::to_string(mask.cols) + " does not fit matrix " +
                      std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  Matrix r(t.rows(), t.cols());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      if (mask.at(i, j)) r(i, j) = t(i, j);
  return r;
}

cplx trace_pair(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || b.cols() != a.rows())
    throw input_error("trace_pair: shapes " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                      "x" + std::to_string(b.cols()) + " do not pair");
  cplx t{0.0, 0.0};
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

}  // namespace bimod
