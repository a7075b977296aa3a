#include "kumanet/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kumanet {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) throw shape_error("Matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw shape_error("Matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    std::ostringstream os;
    os << "Matrix data length " << data_.size() << " does not match " << rows << "x" << cols;
    throw shape_error(os.str());
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r > 0 ? rows.begin()->size() : 0;
  Matrix out(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw shape_error("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace detail {

void throw_shape_error(const char* op, const Matrix& a, const Matrix& b) {
  std::ostringstream os;
  os << op << ": incompatible shapes (" << a.rows() << "x" << a.cols() << ") and (" << b.rows()
     << "x" << b.cols() << ")";
  throw shape_error(os.str());
}

void throw_shape_error(const char* op, const Matrix& m, std::size_t vec_len) {
  std::ostringstream os;
  os << op << ": incompatible shapes (" << m.rows() << "x" << m.cols() << ") and vector of length "
     << vec_len;
  throw shape_error(os.str());
}

}  // namespace detail

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) detail::throw_shape_error("matmul", a, b);
  Matrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  // i-k-j order: the inner j loop is contiguous and carries no reduction, and each
  // out(i,j) still accumulates over k in ascending order.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      const double* b_row = b.row(k);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

Matrix matmul_transpose_a(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) detail::throw_shape_error("matmul_transpose_a", a, b);
  Matrix out(a.cols(), b.cols());
  const std::size_t n = b.cols();
  // Accumulate rank-1 updates over the shared row index, ascending.
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* a_row = a.row(k);
    const double* b_row = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a_row[i];
      double* out_row = out.row(i);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aki * b_row[j];
    }
  }
  return out;
}

Matrix matmul_transpose_b(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) detail::throw_shape_error("matmul_transpose_b", a, b);
  Matrix out(a.rows(), b.rows());
  const std::size_t inner = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* a_row = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* b_row = b.row(j);
      double sum = 0.0;
      for (std::size_t k = 0; k < inner; ++k) sum += a_row[k] * b_row[k];
      out(i, j) = sum;
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

Matrix add_row_broadcast(const Matrix& m, const Vector& v) {
  if (m.cols() != v.size()) detail::throw_shape_error("add_row_broadcast", m, v.size());
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* src = m.row(i);
    double* dst = out.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) dst[j] = src[j] + v[j];
  }
  return out;
}

Matrix scale(const Matrix& m, double s) {
  return map_elementwise(m, [s](double v) { return v * s; });
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) detail::throw_shape_error("add", a, b);
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) detail::throw_shape_error("hadamard", a, b);
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
  return out;
}

Vector row_sums(const Matrix& m) {
  Vector out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* src = m.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) sum += src[j];
    out[i] = sum;
  }
  return out;
}

Vector col_sums(const Matrix& m) {
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* src = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += src[j];
  }
  return out;
}

}  // namespace kumanet
