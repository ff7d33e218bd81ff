#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mbsym/error.hpp"

namespace mbsym {

/// Dense row-major matrix over a ring (Rational, Poly, double).
///
/// Ring elements that need context to form a zero (Poly carries its VarSet)
/// are supplied through the `fill` value.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[check(r, c)]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[check(r, c)]; }

  [[nodiscard]] Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c) {
      for (std::size_t r = 0; r < rows_; ++r) t.data_.push_back((*this)(r, c));
    }
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.cols_ == 0) throw DomainError("Matrix: incompatible shapes for product");
    Matrix r;
    r.rows_ = a.rows_;
    r.cols_ = b.cols_;
    r.data_.reserve(a.rows_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        r.data_.push_back(std::move(acc));
      }
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Matrix-vector product.
  [[nodiscard]] std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_ || cols_ == 0) throw DomainError("Matrix: vector length mismatch");
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc = (*this)(i, 0) * v[0];
      for (std::size_t k = 1; k < cols_; ++k) acc += (*this)(i, k) * v[k];
      out.push_back(std::move(acc));
    }
    return out;
  }

  [[nodiscard]] const std::vector<T>& data() const { return data_; }

 private:
  [[nodiscard]] std::size_t check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw DomainError("Matrix: index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    }
    return r * cols_ + c;
  }
  void same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// [a, b] = ab - ba.
template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

}  // namespace mbsym
