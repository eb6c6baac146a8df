#pragma once

// Exact arithmetic carriers: GMP integers/rationals, a small dense matrix, and
// a fraction-free linear solver.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "symrmt/errors.hpp"

namespace symrmt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Row-major dense matrix with value semantics.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t size) {
    DenseMatrix out(size, size);
    for (std::size_t i = 0; i < size; ++i) out(i, i) = 1;
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = DenseMatrix<Integer>;
using RationalMatrix = DenseMatrix<Rational>;

/// Solves a * x = rhs exactly. Bareiss fraction-free forward elimination on
/// the augmented integer matrix (partial pivoting by magnitude), then
/// rational back substitution. Throws SingularMatrixError.
RationalMatrix solve_exact(const IntegerMatrix& a, const IntegerMatrix& rhs);

RationalMatrix inverse_exact(const IntegerMatrix& a);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix to_rational(const IntegerMatrix& a);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Parses "p/q" or "p". Throws ArgumentError.
Rational parse_rational(const std::string& text);

Integer power(long base, unsigned exponent);

}  // namespace symrmt
