#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "rookwalk/algebra/number.hpp"

namespace rookwalk {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const T> values) {
    if (values.size() != cols_) throw std::invalid_argument("append_row: column count mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;

/// Rational matrix. Entries are kept canonical by set().
class RatMatrix : public Matrix<BigRat> {
 public:
  using Matrix<BigRat>::Matrix;

  void set(std::size_t r, std::size_t c, BigRat v) {
    v.canonicalize();
    (*this)(r, c) = std::move(v);
  }
};

/// Multiplies every row by the lcm of its denominators.
IntMatrix clear_denominators(const RatMatrix& m);

/// True iff m * v == 0 exactly.
bool annihilates(const IntMatrix& m, std::span<const BigInt> v);
bool annihilates(const RatMatrix& m, std::span<const BigInt> v);

}  // namespace rookwalk
