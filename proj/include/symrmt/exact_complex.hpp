#pragma once

// Exact complex rationals. Doubles convert exactly (every finite binary64 is
// a dyadic rational), so parameter matrices enter exact moment computations
// without rounding.

#include <complex>
#include <string>

#include "symrmt/rational.hpp"

namespace symrmt {

struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() = default;
  ExactComplex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r), im(0) {}

  static ExactComplex from_double(std::complex<double> z);
  std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  ExactComplex conj() const { return {re, -im}; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  ExactComplex operator-() const { return {-re, -im}; }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator*(ExactComplex a, const Rational& s) {
    a.re *= s;
    a.im *= s;
    return a;
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
};

/// "p/q", or "p/q + p'/q' i" when the imaginary part is nonzero.
std::string to_string(const ExactComplex& z);

using ExactMatrix = DenseMatrix<ExactComplex>;

}  // namespace symrmt
