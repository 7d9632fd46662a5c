#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "robba/errors.hpp"

namespace robba {

/// Dense row-major matrix over any ring-like value type. Products start from
/// the first term rather than a zero element, so element types whose zero
/// carries data (a prime, a window) work unchanged.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw InvalidInput("ragged matrix rows");
      m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  template <class F>
  auto map(F&& f) const -> Matrix<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    std::vector<std::vector<U>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(f((*this)(i, j)));
    if (rows_ == 0) return Matrix<U>();
    return Matrix<U>::from_rows(out);
  }

  Matrix transposed() const {
    if (rows_ == 0 || cols_ == 0) {
      Matrix e;
      e.rows_ = cols_;
      e.cols_ = rows_;
      return e;
    }
    Matrix t(cols_, rows_, (*this)(0, 0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
  }

  Matrix operator-() const {
    Matrix r(*this);
    for (auto& x : r.data_) x = -x;
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Mismatch("matrix product shape mismatch");
    if (cols_ == 0) throw InvalidInput("empty inner dimension");
    std::vector<std::vector<T>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i].reserve(o.cols_);
      for (std::size_t j = 0; j < o.cols_; ++j) {
        T acc = (*this)(i, 0) * o(0, j);
        for (std::size_t k = 1; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
        out[i].push_back(std::move(acc));
      }
    }
    return from_rows(out);
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Mismatch("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Kronecker product: (A ⊗ B)(i*rb + k, j*cb + l) = A(i,j) * B(k,l).
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  std::vector<std::vector<T>> out(a.rows() * b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < b.rows(); ++k)
      for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l) out[i * b.rows() + k].push_back(a(i, j) * b(k, l));
  return Matrix<T>::from_rows(out);
}

/// Block diagonal [[a, z01], [z10, b]] with caller-supplied off-diagonal fillers.
template <class T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

}  // namespace robba
