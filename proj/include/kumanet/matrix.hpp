#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "kumanet/errors.hpp"

namespace kumanet {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. A mini-batch is stored batch-rows:
// one example per row, one unit/pixel per column.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Accumulation over the inner dimension is always in ascending index order,
// for every variant, so repeated runs are bit-identical and the transpose
// variants agree bit-for-bit with their materialized-transpose compositions.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_transpose_a(const Matrix& a, const Matrix& b);  // == matmul(transpose(a), b)
Matrix matmul_transpose_b(const Matrix& a, const Matrix& b);  // == matmul(a, transpose(b))
Matrix transpose(const Matrix& m);

// out[i,j] = m[i,j] + v[j]; the only broadcasting rule in the library.
Matrix add_row_broadcast(const Matrix& m, const Vector& v);

Matrix scale(const Matrix& m, double s);
Matrix add(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const Matrix& b);
Vector row_sums(const Matrix& m);
Vector col_sums(const Matrix& m);

template <typename F>
Matrix map_elementwise(const Matrix& m, F&& f) {
  Matrix out(m.rows(), m.cols());
  const double* src = m.data();
  double* dst = out.data();
  for (std::size_t i = 0; i < m.size(); ++i) dst[i] = f(src[i]);
  return out;
}

namespace detail {
[[noreturn]] void throw_shape_error(const char* op, const Matrix& a, const Matrix& b);
[[noreturn]] void throw_shape_error(const char* op, const Matrix& m, std::size_t vec_len);
}  // namespace detail

}  // namespace kumanet
