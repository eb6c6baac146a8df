#include "symrmt/rational.hpp"

#include <cmath>

namespace symrmt {

RationalMatrix solve_exact(const IntegerMatrix& a, const IntegerMatrix& rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.rows() != n) throw ArgumentError("solve_exact: dimension mismatch");
  const std::size_t extra = rhs.cols();
  const std::size_t width = n + extra;

  IntegerMatrix m(n, width);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < extra; ++j) m(i, n + j) = rhs(i, j);
  }

  Integer previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot_row = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (mpz_cmpabs(m(i, k).get_mpz_t(), m(pivot_row, k).get_mpz_t()) > 0) pivot_row = i;
    if (sgn(m(pivot_row, k)) == 0) throw SingularMatrixError("matrix is singular");
    m.swap_rows(k, pivot_row);

    const Integer& pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < width; ++j) {
        Integer value = m(i, j) * pivot - m(i, k) * m(k, j);
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        m(i, j) = std::move(value);
      }
      m(i, k) = 0;
    }
    previous = pivot;
  }

  RationalMatrix x(n, extra);
  for (std::size_t c = 0; c < extra; ++c) {
    for (std::size_t i = n; i-- > 0;) {
      Rational sum(m(i, n + c));
      for (std::size_t j = i + 1; j < n; ++j) sum -= Rational(m(i, j)) * x(j, c);
      sum /= Rational(m(i, i));
      x(i, c) = sum;
    }
  }
  return x;
}

RationalMatrix inverse_exact(const IntegerMatrix& a) {
  return solve_exact(a, IntegerMatrix::identity(a.rows()));
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("multiply: dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalMatrix to_rational(const IntegerMatrix& a) {
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational out;
  if (text.empty() || out.set_str(text, 10) != 0 || sgn(out.get_den()) == 0)
    throw ArgumentError("not a rational literal: '" + text + "'");
  out.canonicalize();
  return out;
}

Integer power(long base, unsigned exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(std::labs(base)), exponent);
  if (base < 0 && exponent % 2 == 1) out = -out;
  return out;
}

}  // namespace symrmt
